#include "jfun.hpp"

#include <string>

#include "common.hpp"
#include "jfun_impl.hpp"

namespace reluangle::gauss {

namespace {

void check(int a, int b, double theta) {
    JIndex::checked(a, b);
    Angle::checked(theta);
}

}  // namespace

double phi_moment(int k) {
    if (k < 0) throw invalid_argument_error("phi_moment: order must be non-negative");
    return detail::phi_moment_t<double>(k);
}

double j_base(int a, int b, double theta) {
    check(a, b, theta);
    if (a > b) std::swap(a, b);
    if (a == 0 && b == 0) return detail::j00(theta);
    if (a == 0 && b == 1) return detail::j10(theta);
    if (a == 1 && b == 1) return detail::j11(theta);
    throw invalid_argument_error("j_base: (" + std::to_string(a) + "," + std::to_string(b) +
                                 ") is not a base index");
}

double j_recursive(int a, int b, double theta) {
    check(a, b, theta);
    return detail::j_recursive_t(a, b, theta);
}

double j_closed(int a, int b, double theta) {
    check(a, b, theta);
    return detail::j_closed_t(a, b, theta);
}

}  // namespace reluangle::gauss
