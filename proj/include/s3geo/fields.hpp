#pragma once

#include <functional>
#include <string>

#include "s3geo/group.hpp"

namespace s3geo {

/// Real-valued test function on S^3. Built-in fields are continuous; for
/// user-supplied rules continuity is the caller's responsibility.
struct ScalarField {
    std::string name;
    std::function<double(const UnitQuaternion&)> eval;

    double operator()(const UnitQuaternion& p) const { return eval(p); }
};

ScalarField constant_field(double c);
ScalarField coordinate_field(int i);
ScalarField coordinate_square_field(int i);
ScalarField coordinate_product_field(int i, int j);

/// Center used by bump fields when none is given; a fixed generic point.
UnitQuaternion default_bump_center();

/// exp(-k |p - p0|^2), ambient squared distance.
ScalarField bump_field(double k, const UnitQuaternion& center = default_bump_center());

/// Parses "one", "constant:<c>", "coord:<i>", "sq:<i>", "prod:<i>,<j>",
/// "bump:<k>". Throws std::invalid_argument on anything else.
ScalarField parse_scalar_field(const std::string& spec);

/// Strictly positive field; evaluation throws std::domain_error the moment a
/// non-positive value shows up, aborting the surrounding experiment.
struct ConformalFactor {
    std::string name;
    std::function<double(const UnitQuaternion&)> eval;

    double operator()(const UnitQuaternion& p) const;
};

ConformalFactor constant_factor(double c);
/// 1 + eta * (Re z)^2
ConformalFactor quadratic_factor(double eta);
/// exp(a * Re z)
ConformalFactor exponential_factor(double a);

/// Parses "constant:<c>", "quad:<eta>", "exp:<a>".
ConformalFactor parse_conformal_factor(const std::string& spec);

}  // namespace s3geo
