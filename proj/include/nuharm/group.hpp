#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nuharm {

enum class GroupTag { Affine, Sim2, PoincareAff };
enum class HaarSide { Left, Right };

std::string_view to_string(GroupTag tag);
// accepts "affine", "sim2", "paff"
GroupTag parse_group_tag(std::string_view name);
// number of translation coordinates (1 or 2)
int translation_dim(GroupTag tag);
bool has_angle(GroupTag tag);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 u, Vec2 v) { return {u.x + v.x, u.y + v.y}; }
inline Vec2 operator-(Vec2 u, Vec2 v) { return {u.x - v.x, u.y - v.y}; }
inline Vec2 operator-(Vec2 u) { return {-u.x, -u.y}; }
inline Vec2 operator*(double s, Vec2 u) { return {s * u.x, s * u.y}; }

inline double dot(Vec2 u, Vec2 v) { return u.x * v.x + u.y * v.y; }
inline double cross(Vec2 u, Vec2 v) { return u.x * v.y - u.y * v.x; }
// <x;y> = x1 y1 - x2 y2
inline double minkowski(Vec2 u, Vec2 v) { return u.x * v.x - u.y * v.y; }

Vec2 rotate(double theta, Vec2 v);
// Lambda_t = [[cosh t, sinh t], [sinh t, cosh t]]
Vec2 boost(double rapidity, Vec2 v);

// reduce into [0, 2pi)
double reduce_angle(double theta);

class IncompatibleGroups : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GroupElement {
    GroupTag tag = GroupTag::Affine;
    Vec2 b;            // b.y unused for Affine
    double a = 1.0;
    double angle = 0;  // theta for Sim2 (reduced), rapidity for PoincareAff

    static GroupElement affine(double b, double a);
    static GroupElement sim2(Vec2 b, double a, double theta);
    static GroupElement poincare(Vec2 b, double a, double rapidity);
};

GroupElement identity(GroupTag tag);
GroupElement multiply(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);

double haar_density(GroupTag tag, HaarSide side, const GroupElement& g);
// convention: int f(x g) dmu_L(x) = modular_function(g)^{-1} int f dmu_L
double modular_function(GroupTag tag, const GroupElement& g);

// x = a R_theta y + b (Sim2), a Lambda_t y + b (PoincareAff)
Vec2 plane_action(const GroupElement& g, Vec2 y);

std::string describe(const GroupElement& g);

}  // namespace nuharm
