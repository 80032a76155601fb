#include "bcs/benchmarks.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

#include "bcs/parser.hpp"

namespace bcs {

namespace {

// Truss geometric design: find the moveable joint (x1, y1) such that member
// forces stay below yield/buckling limits. Auxiliary lengths and forces are
// let-definitions (the trigonometric quantities are eliminated:
// sin t1 = (H-y1)/L1, tan t1 = (H-y1)/(L-x1), cos t3 = x1/L3,
// cos t2 = x1/L4, tan t2 = y1/x1). The conditional constraint
// "F3 <= 0 implies -F3 < C3*A" is a disjunction.
const char* kTD = R"(problem TD
var x1 in [0.01, 10]
var y1 in [0.01, 10]
let E = 210 * 10^6
let T = 235 * 10^3
let A = 0.25
let r = 0.5
let P = 400
let H = 6
let L = 10
let R1 = P * L / H
let L1 = sqrt((L - x1)^2 + (H - y1)^2)
let L3 = sqrt(x1^2 + (H - y1)^2)
let L4 = sqrt(x1^2 + y1^2)
let F1 = P * L1 / (H - y1)
let F2 = P * (L - x1) / (H - y1)
let F3 = (R1 - F2) * L3 / x1
let F4 = R1 * L4 / x1
let F5 = R1 * y1 / x1
let C1 = pi^2 * E / (L1 / r)^2
let C3 = pi^2 * E / (L3 / r)^2
let C4 = pi^2 * E / (L4 / r)^2
constraint F2 < T * A
constraint F5 < T * A
constraint F1 < C1 * A
constraint F1 < T * A
constraint F4 < C4 * A
constraint F4 < T * A
constraint abs(F3) < T * A
constraint F3 > 0 or -F3 < C3 * A
constraint x1 < L
constraint y1 < H
)";

// Railway bridge beam under cyclic stress; alpha is a piecewise function of
// the span L.
const char* kFD = R"(problem FD
var L in [10, 30]
var qf in [70, 90]
var Z in [0.1, 10]
let sigma_c = 115000
let gamma = 1.1
let fy = 460000
let years = 200
let alpha = piecewise((L <= 4) -> 1.3; (L <= 7.5) -> 1.3 - 0.1*(L - 4); (L <= 20) -> 0.95 - 0.008*(L - 7.5); (L <= 50) -> 0.85 - (L - 20)/300; else -> 0.75)
let phi = 0.82 + 1.44 / (sqrt(L) - 0.2)
let qr = qf * phi
let sigma = qr * L^2 / 8 / (Z / 100)
let sigma_e = alpha * sigma
let cycles = 0.05 * years
let sigma_r = sigma_c * min(2.5, cycles / 2)^(-1/3)
let resistance = sigma_r / gamma
constraint sigma < fy
constraint sigma_e < resistance
)";

// Wheel-and-pawl contact regions.
const char* kWP = R"(problem WP
var x in [-50, 50]
var y in [0, 50]
constraint 20 < sqrt(x^2 + y^2) < 50
constraint 12*y / sqrt((x - 12)^2 + y^2) < 10
)";

const char* kP1 = R"(problem P1
var x in [0, 50]
var y in [0, 100]
var z in [0, 50]
constraint 2*x^2 <= 3*y - (y + 1)^0.2 + 5
constraint ln(y^1.5 + 2*y + 1) + 5 <= z + (z + 1/2)^0.1
constraint (x + 1)^1.5 >= 2*sqrt(x) / (3 + sqrt(z^2 + 1))
)";

const char* kP2 = R"(problem P2
var x in [0, 15]
var y in [1, 200]
var z in [-10, 10]
constraint x^2 <= y
constraint ln(y) + 1 >= z
constraint x*z <= 1
)";

const char* kP3 = R"(problem P3
var x in [0, 15]
var y in [1, 200]
var z in [0, 10]
constraint x^2 <= y
constraint ln(y) + 1 >= z
constraint x*z <= 1
constraint x^1.5 + ln(1.5*z + 1) <= y + 1
)";

const char* kP4 = R"(problem P4
var x in [0, 50]
var y in [0, 100]
var z in [0, 50]
constraint x^1.5 + 1.9 <= ln(y^3 + y + 1.5)
constraint ln(y^2 + z + 1) <= z + 2
constraint sqrt(x^2 + z^2 + 12*x + 5) <= 3 + (2*x + 3)^3
)";

const char* kG12 = R"(problem G12
var x1 in [-8, 8]
var x2 in [-8, 8]
var x3 in [-8, 8]
constraint x1^2 + 0.5*x2 + 2*(x3 - 3) >= 0
constraint x1^2 + x2^2 + x3^2 <= 25
)";

const char* kH12 = R"(problem H12
var x1 in [-10, 10]
var x2 in [-10, 10]
var x3 in [-10, 10]
constraint x1^2 + x2^2 + x3^2 <= 36
constraint (x1 - 1)^2 + (x2 - 2)^2 + x3^2 >= 16
constraint x1^2 + (x2 - 0.4)^2 >= 2*x3
)";

// Intersection of a tricuspoid and the outside of a circle.
const char* kF22 = R"(problem F22
var x in [-4, 4]
var y in [-4, 4]
constraint (x^2 + y^2 + 24*x + 36)^2 <= 64*(x + 3)^3
constraint x^2 + y^2 >= 8
)";

const char* kL01 = R"(problem L01
var x in [0, 50]
var y in [0, 200]
constraint (x + 0.1)*sqrt(y) >= 20 + sqrt(x)
constraint ln(sqrt(y + 1) + 13) + 50 >= (x + 0.5)^1.2
)";

const char* kLE1 = R"(problem LE1
var x in [0, 50]
var y in [0, 50]
constraint exp(x + 1) / exp(sqrt(y + 1)) <= 100*sqrt(x*y + 7) + 30
constraint (x^2 - 3*x + 1)*sqrt(y + 2) >= x*ln(10*y + 3) + 50
)";

const char* kS06 = R"(problem S06
var x in [-50, 50]
var y in [0, 50]
constraint 12*y / sqrt((x - 12)^2 + y^2) <= 10
)";

// Half-annulus between the circles of radius 20 and 50.
const char* kS08 = R"(problem S08
var x in [-50, 50]
var y in [0, 50]
constraint 20 <= sqrt(x^2 + y^2) <= 50
)";

const std::map<std::string, const char*>& registry() {
    static const std::map<std::string, const char*> r = {
        {"TD", kTD},   {"FD", kFD},   {"WP", kWP},   {"P1", kP1},
        {"P2", kP2},   {"P3", kP3},   {"P4", kP4},   {"G12", kG12},
        {"H12", kH12}, {"F22", kF22}, {"L01", kL01}, {"LE1", kLE1},
        {"S06", kS06}, {"S08", kS08},
    };
    return r;
}

std::string canonical_name(const std::string& name) {
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return (char)std::toupper(c); });
    return up;
}

}  // namespace

std::vector<std::string> benchmark_names() {
    return {"TD", "FD", "WP", "P1", "P2", "P3", "P4",
            "G12", "H12", "F22", "L01", "LE1", "S06", "S08"};
}

const std::string& benchmark_text(const std::string& name) {
    static std::map<std::string, std::string> cache;
    std::string key = canonical_name(name);
    auto it = registry().find(key);
    if (it == registry().end())
        throw std::out_of_range("unknown benchmark '" + name + "'");
    auto c = cache.find(key);
    if (c == cache.end()) c = cache.emplace(key, it->second).first;
    return c->second;
}

NCSP benchmark(const std::string& name) {
    return parse_problem(benchmark_text(name));
}

}  // namespace bcs
