#include <cstdlib>

#include "pyrofield/kernels.hpp"

namespace pyrofield {

const Kernels& active_kernels() {
    static const Kernels selected = [] {
        const char* force = std::getenv("PYROFIELD_FORCE_SCALAR");
        if (force && force[0] == '1') return scalar_kernels();
        if (const Kernels* k = avx2_kernels()) return *k;
        return scalar_kernels();
    }();
    return selected;
}

}  // namespace pyrofield
