#include "tactoid/parallel.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tactoid::par {

namespace {
std::atomic<bool> g_serial{false};
}

void set_serial(bool serial) { g_serial.store(serial); }
bool serial_mode() { return g_serial.load(); }

int max_threads() {
#ifdef _OPENMP
    return serial_mode() ? 1 : omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace tactoid::par
