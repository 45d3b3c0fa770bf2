#include "nuharm/group.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace nuharm {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_positive_dilation(double a) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw std::invalid_argument("dilation parameter must be a finite positive number");
}

}  // namespace

std::string_view to_string(GroupTag tag) {
    switch (tag) {
        case GroupTag::Affine: return "affine";
        case GroupTag::Sim2: return "sim2";
        case GroupTag::PoincareAff: return "paff";
    }
    return "?";
}

GroupTag parse_group_tag(std::string_view name) {
    if (name == "affine") return GroupTag::Affine;
    if (name == "sim2") return GroupTag::Sim2;
    if (name == "paff") return GroupTag::PoincareAff;
    throw std::invalid_argument("unknown group '" + std::string(name) + "' (expected affine, sim2 or paff)");
}

int translation_dim(GroupTag tag) { return tag == GroupTag::Affine ? 1 : 2; }
bool has_angle(GroupTag tag) { return tag != GroupTag::Affine; }

Vec2 rotate(double theta, Vec2 v) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Vec2 boost(double t, Vec2 v) {
    const double c = std::cosh(t), s = std::sinh(t);
    return {c * v.x + s * v.y, s * v.x + c * v.y};
}

double reduce_angle(double theta) {
    double r = std::fmod(theta, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;  // -tiny + 2pi rounds up to 2pi
    return r;
}

GroupElement GroupElement::affine(double b, double a) {
    require_positive_dilation(a);
    return {GroupTag::Affine, {b, 0.0}, a, 0.0};
}

GroupElement GroupElement::sim2(Vec2 b, double a, double theta) {
    require_positive_dilation(a);
    return {GroupTag::Sim2, b, a, reduce_angle(theta)};
}

GroupElement GroupElement::poincare(Vec2 b, double a, double rapidity) {
    require_positive_dilation(a);
    return {GroupTag::PoincareAff, b, a, rapidity};
}

GroupElement identity(GroupTag tag) { return {tag, {0.0, 0.0}, 1.0, 0.0}; }

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
    if (g.tag != h.tag)
        throw IncompatibleGroups("cannot multiply elements of " + std::string(to_string(g.tag)) +
                                 " and " + std::string(to_string(h.tag)));
    switch (g.tag) {
        case GroupTag::Affine:
            return GroupElement::affine(g.b.x + g.a * h.b.x, g.a * h.a);
        case GroupTag::Sim2:
            return GroupElement::sim2(g.b + g.a * rotate(g.angle, h.b), g.a * h.a, g.angle + h.angle);
        case GroupTag::PoincareAff:
            return GroupElement::poincare(g.b + g.a * boost(g.angle, h.b), g.a * h.a, g.angle + h.angle);
    }
    throw std::logic_error("unreachable");
}

GroupElement inverse(const GroupElement& g) {
    switch (g.tag) {
        case GroupTag::Affine:
            return GroupElement::affine(-g.b.x / g.a, 1.0 / g.a);
        case GroupTag::Sim2:
            return GroupElement::sim2(-(1.0 / g.a) * rotate(-g.angle, g.b), 1.0 / g.a, -g.angle);
        case GroupTag::PoincareAff:
            return GroupElement::poincare(-(1.0 / g.a) * boost(-g.angle, g.b), 1.0 / g.a, -g.angle);
    }
    throw std::logic_error("unreachable");
}

double haar_density(GroupTag tag, HaarSide side, const GroupElement& g) {
    require_positive_dilation(g.a);
    if (side == HaarSide::Right) return 1.0 / g.a;
    return tag == GroupTag::Affine ? 1.0 / (g.a * g.a) : 1.0 / (g.a * g.a * g.a);
}

double modular_function(GroupTag tag, const GroupElement& g) {
    require_positive_dilation(g.a);
    // x -> x g scales the translation block by a^{dim b}
    return tag == GroupTag::Affine ? 1.0 / g.a : 1.0 / (g.a * g.a);
}

Vec2 plane_action(const GroupElement& g, Vec2 y) {
    switch (g.tag) {
        case GroupTag::Sim2: return g.a * rotate(g.angle, y) + g.b;
        case GroupTag::PoincareAff: return g.a * boost(g.angle, y) + g.b;
        case GroupTag::Affine: break;
    }
    throw std::invalid_argument("the affine group has no action on the plane");
}

std::string describe(const GroupElement& g) {
    std::ostringstream os;
    os.precision(17);
    os << to_string(g.tag) << "(b=";
    if (g.tag == GroupTag::Affine)
        os << g.b.x;
    else
        os << "(" << g.b.x << "," << g.b.y << ")";
    os << ", a=" << g.a;
    if (g.tag != GroupTag::Affine) os << ", angle=" << g.angle;
    os << ")";
    return os.str();
}

}  // namespace nuharm
