#include "s3geo/fields.hpp"

#include <cmath>
#include <charconv>
#include <stdexcept>

namespace s3geo {

namespace {

double parse_number(const std::string& text) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid number '" + text + "'");
    }
}

int parse_coordinate_index(const std::string& text) {
    const double v = parse_number(text);
    const int i = static_cast<int>(v);
    if (i < 0 || i > 3 || static_cast<double>(i) != v)
        throw std::invalid_argument("coordinate index must be 0..3");
    return i;
}

}  // namespace

ScalarField constant_field(double c) {
    return {"constant:" + std::to_string(c), [c](const UnitQuaternion&) { return c; }};
}

ScalarField coordinate_field(int i) {
    if (i < 0 || i > 3) throw std::invalid_argument("coordinate_field: index must be 0..3");
    return {"coord:" + std::to_string(i),
            [i](const UnitQuaternion& p) { return p.coord(i); }};
}

ScalarField coordinate_square_field(int i) {
    if (i < 0 || i > 3) throw std::invalid_argument("coordinate_square_field: index must be 0..3");
    return {"sq:" + std::to_string(i), [i](const UnitQuaternion& p) {
                const double x = p.coord(i);
                return x * x;
            }};
}

ScalarField coordinate_product_field(int i, int j) {
    if (i < 0 || i > 3 || j < 0 || j > 3)
        throw std::invalid_argument("coordinate_product_field: indices must be 0..3");
    return {"prod:" + std::to_string(i) + "," + std::to_string(j),
            [i, j](const UnitQuaternion& p) { return p.coord(i) * p.coord(j); }};
}

UnitQuaternion default_bump_center() { return UnitQuaternion(0.3, -0.4, 0.5, 0.7); }

ScalarField bump_field(double k, const UnitQuaternion& center) {
    if (!(k > 0.0)) throw std::invalid_argument("bump_field: k must be positive");
    return {"bump:" + std::to_string(k), [k, center](const UnitQuaternion& p) {
                const double d = p.distance_to(center);
                return std::exp(-k * d * d);
            }};
}

ScalarField parse_scalar_field(const std::string& spec) {
    if (spec == "one") return constant_field(1.0);
    const std::size_t colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "constant") return constant_field(parse_number(args));
    if (head == "coord") return coordinate_field(parse_coordinate_index(args));
    if (head == "sq") return coordinate_square_field(parse_coordinate_index(args));
    if (head == "prod") {
        const std::size_t comma = args.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("prod field needs two indices, e.g. prod:0,2");
        return coordinate_product_field(parse_coordinate_index(args.substr(0, comma)),
                                        parse_coordinate_index(args.substr(comma + 1)));
    }
    if (head == "bump") return bump_field(args.empty() ? 1.0 : parse_number(args));
    throw std::invalid_argument("unknown scalar field '" + spec + "'");
}

double ConformalFactor::operator()(const UnitQuaternion& p) const {
    const double v = eval(p);
    if (!(v > 0.0))
        throw std::domain_error("conformal factor '" + name + "' is not strictly positive");
    return v;
}

ConformalFactor constant_factor(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("constant_factor: value must be positive");
    return {"constant:" + std::to_string(c), [c](const UnitQuaternion&) { return c; }};
}

ConformalFactor quadratic_factor(double eta) {
    if (!(eta > -1.0)) throw std::invalid_argument("quadratic_factor: eta must exceed -1");
    return {"quad:" + std::to_string(eta), [eta](const UnitQuaternion& p) {
                const double x = p.coord(0);
                return 1.0 + eta * x * x;
            }};
}

ConformalFactor exponential_factor(double a) {
    return {"exp:" + std::to_string(a),
            [a](const UnitQuaternion& p) { return std::exp(a * p.coord(0)); }};
}

ConformalFactor parse_conformal_factor(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "constant") return constant_factor(parse_number(args));
    if (head == "quad") return quadratic_factor(parse_number(args));
    if (head == "exp") return exponential_factor(parse_number(args));
    throw std::invalid_argument("unknown conformal factor '" + spec + "'");
}

}  // namespace s3geo
