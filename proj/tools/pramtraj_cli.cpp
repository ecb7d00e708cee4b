#include <iostream>
#ifdef __GLIBC__
#include <malloc.h>
#endif

#include "pramtraj/harness.hpp"

int main(int argc, char** argv) {
#ifdef __GLIBC__
  // Keep freed trace memory in the heap across samples.
  mallopt(M_MMAP_THRESHOLD, 1 << 28);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
#endif
  return pramtraj::cli_main(argc, argv, std::cout, std::cerr);
}
