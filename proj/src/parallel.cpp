#include "symdom/parallel.hpp"

#include <omp.h>

namespace symdom {

int max_threads() { return omp_get_max_threads(); }

}  // namespace symdom
