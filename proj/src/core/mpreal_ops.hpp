#ifndef RELUANGLE_MPREAL_OPS_HPP
#define RELUANGLE_MPREAL_OPS_HPP

// real_ops specialization wiring MpReal into the templated evaluators.

#include "jfun_impl.hpp"
#include "mpreal.hpp"

namespace reluangle::gauss::detail {

template <>
struct real_ops<reluangle::hp::MpReal> {
    using R = reluangle::hp::MpReal;
    static R pi() { return R::pi(); }
    static R sin(const R& x) { return R::sin(x); }
    static R cos(const R& x) { return R::cos(x); }
    static R sqrt(const R& x) { return R::sqrt(x); }
    static R log(const R& x) { return R::log(x); }
};

}  // namespace reluangle::gauss::detail

#endif
