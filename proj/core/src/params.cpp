#include "bbtv/params.hpp"

namespace bbtv {

bool ParamSet::valid() const {
    for (double v : values)
        if (!(v >= 0.0 && v <= 1.0)) return false;
    return true;
}

}  // namespace bbtv
