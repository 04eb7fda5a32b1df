#include "tdm3d/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace tdm3d::kernels {
namespace {

const Ops* lookup(const std::string& name) {
    if (name == "scalar") return &scalar_ops();
    if (name == "avx2") return avx2_ops();
    return nullptr;
}

const Ops* initial() {
    if (const char* env = std::getenv("TDM3D_KERNEL")) {
        if (const Ops* ops = lookup(env)) return ops;
    }
    if (const Ops* ops = avx2_ops()) return ops;
    return &scalar_ops();
}

const Ops*& current() {
    static const Ops* ops = initial();
    return ops;
}

}  // namespace

const Ops& active() { return *current(); }

void force(const std::string& name) {
    const Ops* ops = lookup(name);
    if (!ops) throw std::invalid_argument("unknown or unavailable kernel variant: " + name);
    current() = ops;
}

}  // namespace tdm3d::kernels
