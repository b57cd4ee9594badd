#include "jfun_hp.hpp"

#include "common.hpp"
#include "mpreal_ops.hpp"

namespace reluangle::gauss::hp {

using reluangle::hp::MpReal;

RouteComparison compare_routes(int a, int b, int num, int den) {
    JIndex::checked(a, b);
    if (den <= 0 || num < 0 || num > den)
        throw invalid_argument_error("compare_routes: need 0 <= num <= den");
    const MpReal theta = MpReal::pi() * MpReal(num) / MpReal(den);
    const MpReal rec = detail::j_recursive_t<MpReal>(a, b, theta);
    const MpReal cls = detail::j_closed_t<MpReal>(a, b, theta);
    const MpReal diff = MpReal::abs(rec - cls);
    const MpReal scale = MpReal::max(MpReal::abs(rec), MpReal::abs(cls));
    RouteComparison out;
    out.value = cls.to_double();
    out.rel_diff = (scale.to_double() == 0.0) ? 0.0 : (diff / scale).to_double();
    return out;
}

}  // namespace reluangle::gauss::hp
