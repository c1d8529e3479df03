#pragma once

#include "tiltfmt/chern.hpp"
#include "tiltfmt/fmt.hpp"
#include "tiltfmt/numeric.hpp"
#include "tiltfmt/rng.hpp"
#include "tiltfmt/scenario.hpp"
#include "tiltfmt/stability.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace tiltfmt {

struct RunOptions {
    std::string scenario_name = "scenario";
    int grid = 40;
    bool float_mode = false;
    std::optional<std::uint64_t> seed_override;
};

struct Artifact {
    std::string filename;
    std::string contents;
};

struct RunResult {
    int failures = 0;
    std::string report;
    std::vector<Artifact> artifacts;

    int exit_code() const { return failures == 0 ? 0 : 1; }
};

namespace detail {

inline bool scalar_is_rational(const Scalar& s) {
    return s.re.b == 0 && s.im.a == 0 && s.im.b == 0;
}

inline Rational wall_offset_bound(const Rational& radius_sq) {
    // A rational 0 < w <= sqrt(radius_sq), used to place exact sample offsets.
    const Integer num = numerator(radius_sq), den = denominator(radius_sq);
    const Integer prod = num * den;
    return Rational(boost::multiprecision::sqrt(prod), den);
}

inline Integer wall_radius_ceiling(const Rational& radius_sq) {
    const Integer num = numerator(radius_sq), den = denominator(radius_sq);
    const Integer quot = num / den;
    Integer n = boost::multiprecision::sqrt(quot);
    while (n * n * den < num) ++n;
    return n < 1 ? Integer(1) : n;
}

class SvgCanvas {
  public:
    SvgCanvas(double bmin, double bmax, double amax) : bmin_(bmin), bmax_(bmax), amax_(amax) {
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
                "viewBox=\"0 0 800 500\">\n";
        out_ << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"#ffffff\"/>\n";
        line(bmin_, 0, bmax_, 0, "#888888", 1);
    }

    void dot(double b, double a, const char* color) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n",
                      sx(b), sy(a), color);
        out_ << buf;
    }

    void line(double b0, double a0, double b1, double a1, const char* color, int width) {
        char buf[240];
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                      "stroke=\"%s\" stroke-width=\"%d\"/>\n",
                      sx(b0), sy(a0), sx(b1), sy(a1), color, width);
        out_ << buf;
    }

    void arc(double center, double radius) {
        out_ << "<path d=\"";
        char buf[64];
        for (int i = 0; i <= 128; ++i) {
            const double t = M_PI * i / 128.0;
            const double b = center - radius * std::cos(t);
            const double a = radius * std::sin(t);
            std::snprintf(buf, sizeof buf, "%c %.2f %.2f ", i == 0 ? 'M' : 'L', sx(b), sy(a));
            out_ << buf;
        }
        out_ << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
    }

    void caption(const std::string& text) {
        out_ << "<text x=\"20\" y=\"30\" font-family=\"monospace\" font-size=\"16\">" << text
             << "</text>\n";
    }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

  private:
    double sx(double b) const { return 40 + (b - bmin_) / (bmax_ - bmin_) * 720; }
    double sy(double a) const { return 460 - a / amax_ * 420; }

    double bmin_, bmax_, amax_;
    std::ostringstream out_;
};

class TaskLog {
  public:
    TaskLog(std::ostringstream& out, int& failures) : out_(out), failures_(failures) {}

    void note(const std::string& line) { out_ << "  " << line << "\n"; }

    void fail(const std::string& line) {
        out_ << "  FAIL: " << line << "\n";
        ++failures_;
    }

    void check(bool ok, const std::string& what) {
        if (!ok) fail(what);
    }

    template <typename T>
    void expect_eq(const std::optional<T>& want, const T& got, const std::string& what) {
        if (want && !(*want == got))
            fail(what + ": expected " + render(*want) + ", got " + render(got));
    }

  private:
    std::ostringstream& out_;
    int& failures_;
};

}  // namespace detail

inline RunResult run_scenario(const Scenario& sc, const RunOptions& opt) {
    using namespace detail;
    RunResult result;
    std::ostringstream out;
    const std::uint64_t seed = opt.seed_override.value_or(sc.seed);
    Rng rng(seed);

    const FmtContext& ctx = sc.ctx;
    out << "scenario " << opt.scenario_name << "\n";
    out << "seed " << seed << "\n";
    out << "context g=" << ctx.g << " r=" << render(ctx.r) << " dX=" << render(ctx.dX)
        << " dY=" << render(ctx.dY) << " degX=" << render(ctx.degX) << " degY=" << render(ctx.degY)
        << "\n";

    int index = 0;
    for (const Task& t : sc.tasks) {
        ++index;
        TaskLog log(out, result.failures);
        out << "\n[" << index << "] " << render(t.kind) << "\n";
        try {
            switch (t.kind) {
                case Task::Kind::transform: {
                    const ChernVector& given = *sc.find_vector(t.input);
                    const ChernVector x = twist(given, Scalar{-ctx.dX} - given.base);
                    log.note("input " + t.input + " rebased to " + render(x.base));
                    const ChernVector y = fmt_transform(ctx, x);
                    std::string line = "output base " + render(y.base) + ", components ";
                    for (std::size_t i = 0; i < y.v.size(); ++i)
                        line += (i ? ", " : "") + render(y.v[i]);
                    log.note(line);
                    if (t.expect_v) {
                        for (std::size_t i = 0; i < y.v.size(); ++i)
                            if ((*t.expect_v)[i] != y.v[i]) {
                                log.fail("component " + std::to_string(i) + ": expected " +
                                         render((*t.expect_v)[i]) + ", got " + render(y.v[i]));
                                break;
                            }
                    }
                    log.expect_eq(t.expect_base, y.base, "output base");
                    break;
                }
                case Task::Kind::charge: {
                    const ChernVector& x = *sc.find_vector(t.input);
                    const ComplexAmple omega{*t.omega};
                    const Scalar z = t.k ? weak_charge(x, *t.k, omega) : central_charge(x, omega);
                    log.note((t.k ? "truncated charge k=" + std::to_string(*t.k)
                                  : std::string("charge")) +
                             " at omega = " + render(omega.omega));
                    log.note("Z = " + render(z));
                    log.expect_eq(t.expect_value, z, "charge");
                    break;
                }
                case Task::Kind::nu: {
                    const ChernVector& x = *sc.find_vector(t.input);
                    const TiltPoint p{*t.b, *t.alpha};
                    const Slope s = nu(x, p);
                    log.note("nu at (b, alpha) = (" + render(p.b) + ", " + render(p.alpha) +
                             ") is " + render(s));
                    if (t.expect_inf) log.check(s.infinite, "expected an infinite slope");
                    if (t.expect_value) {
                        if (s.infinite) log.fail("expected " + render(*t.expect_value) + ", got inf");
                        else log.expect_eq(t.expect_value, s.value, "slope");
                    }
                    break;
                }
                case Task::Kind::bg: {
                    const ChernVector& x = *sc.find_vector(t.input);
                    const TiltPoint p{*t.b, *t.alpha};
                    const Scalar defect = bg_defect(x, p);
                    const bool holds = scalar_sign(defect.re) <= 0;
                    const BgVerdict classical = classical_bg(x);
                    log.note("defect at (b, alpha) = (" + render(p.b) + ", " + render(p.alpha) +
                             ") is " + render(defect));
                    log.note(std::string("tilt inequality: ") + (holds ? "holds" : "fails"));
                    log.note("classical discriminant " + render(classical.witness) +
                             (classical.holds ? " (nonnegative)" : " (negative)"));
                    if (t.expect_holds)
                        log.check(*t.expect_holds == holds, "tilt inequality verdict");
                    log.expect_eq(t.expect_defect, defect, "defect");
                    break;
                }
                case Task::Kind::bg_chain: {
                    const Rational lambda = *t.lambda;
                    const Scalar c{Rational{factorial(3)} / (ctx.r * ctx.degX * lambda)};
                    auto run_one = [&](const ChernVector& x, bool verbose) -> bool {
                        const BgChainReport rep = bg_via_fmt_chain(ctx, x, lambda);
                        if (verbose) {
                            log.note(std::string("Im Z vanishes on the input: ") +
                                     (rep.imzero ? "yes" : "no"));
                            log.note("shifted transform slope numerator s = " + render(rep.s));
                            log.note("scale c = " + render(c));
                            log.note("tilt defect = " + render(rep.defect));
                        }
                        if (!rep.imzero) return true;
                        return rep.proportional;
                    };
                    if (!t.input.empty()) {
                        const ChernVector& given = *sc.find_vector(t.input);
                        const ChernVector x = twist(given, Scalar{-ctx.dX} - given.base);
                        if (!run_one(x, true)) log.fail("s = c * (-defect) fails");
                        else log.note("s = c * (-defect) holds");
                    } else {
                        const long n = *t.randomized;
                        long ok = 0;
                        for (long i = 0; i < n; ++i) {
                            std::vector<Scalar> v(4);
                            v[0] = Scalar{rng.rational()};
                            v[1] = Scalar{rng.rational()};
                            v[2] = Scalar{lambda * v[1].re.a};
                            v[3] = Scalar{rng.rational()};
                            const ChernVector x{geometry_x(ctx), Scalar{-ctx.dX}, v};
                            if (run_one(x, false)) ++ok;
                        }
                        log.note(std::to_string(ok) + "/" + std::to_string(n) +
                                 " randomized inputs satisfy s = c * (-defect)");
                        log.check(ok == n, "randomized bg chain sweep");
                    }
                    break;
                }
                case Task::Kind::walls: {
                    const ChernVector& x = *sc.find_vector(t.x);
                    const ChernVector& y = *sc.find_vector(t.y);
                    const Wall wall = wall_between(x, y);
                    log.note("kind = " + render(wall.kind));
                    if (wall.kind == Wall::Kind::circle) {
                        log.note("center_b = " + render(wall.center_b));
                        log.note("radius_sq = " + render(wall.radius_sq));
                    }
                    if (wall.kind == Wall::Kind::vertical_line)
                        log.note("line_b = " + render(wall.line_b));
                    log.expect_eq(t.expect_kind, wall.kind, "wall kind");
                    if (t.expect_center) log.expect_eq(t.expect_center, wall.center_b, "center_b");
                    if (t.expect_radius_sq)
                        log.expect_eq(t.expect_radius_sq, wall.radius_sq, "radius_sq");
                    if (t.expect_line) log.expect_eq(t.expect_line, wall.line_b, "line_b");

                    const int samples = 100;
                    long agreed = 0, taken = 0;
                    auto sample = [&](const Rational& b, const Rational& alpha_sq) {
                        ++taken;
                        if (nu_alpha_sq(x, b, alpha_sq) == nu_alpha_sq(y, b, alpha_sq)) ++agreed;
                    };
                    if (wall.kind == Wall::Kind::circle) {
                        const Rational w = wall_offset_bound(wall.radius_sq);
                        for (int j = 0; j < samples; ++j) {
                            const Rational delta = w * Rational(j + 1, samples + 2) *
                                                   (j % 2 == 0 ? 1 : -1);
                            sample(wall.center_b + delta, wall.radius_sq - delta * delta);
                        }
                    } else if (wall.kind == Wall::Kind::vertical_line) {
                        for (int j = 0; j < samples; ++j) {
                            const Rational alpha(j + 1, 7);
                            sample(wall.line_b, alpha * alpha);
                        }
                    } else if (wall.kind == Wall::Kind::everywhere) {
                        for (int j = 0; j < samples; ++j)
                            sample(Rational(j - samples / 2, 3), Rational(j + 1, 5));
                    }
                    if (taken > 0) {
                        log.note(std::to_string(taken) + " exact wall points sampled, " +
                                 std::to_string(agreed) + " with matching tilt slopes");
                        log.check(agreed == taken, "tilt slopes must agree on the wall");
                    } else {
                        log.note("no positive-alpha wall points exist");
                    }

                    const WallEquation eq = wall_equation(x, y);
                    Rational bmin, bmax, amax;
                    if (wall.kind == Wall::Kind::circle) {
                        const Integer R = wall_radius_ceiling(wall.radius_sq);
                        bmin = wall.center_b - 2 * Rational(R);
                        bmax = wall.center_b + 2 * Rational(R);
                        amax = 2 * Rational(R);
                    } else if (wall.kind == Wall::Kind::vertical_line) {
                        bmin = wall.line_b - 2;
                        bmax = wall.line_b + 2;
                        amax = 2;
                    } else {
                        bmin = -2;
                        bmax = 2;
                        amax = 2;
                    }
                    const int n = opt.grid;
                    std::ostringstream csv;
                    csv << "b,alpha,nu_x,nu_y,side\n";
                    SvgCanvas svg(to_double(bmin), to_double(bmax), to_double(amax));
                    for (int i = 0; i < n; ++i) {
                        const Rational b = bmin + (bmax - bmin) * Rational(2 * i + 1, 2 * n);
                        for (int j = 0; j < n; ++j) {
                            const Rational alpha = amax * Rational(j + 1, n);
                            const Rational side =
                                eq.k0 * (b * b + alpha * alpha) - eq.k1 * b + eq.k2;
                            const int sgn = side < 0 ? -1 : side > 0 ? 1 : 0;
                            csv << render(b) << "," << render(alpha) << ","
                                << render(nu_alpha_sq(x, b, alpha * alpha)) << ","
                                << render(nu_alpha_sq(y, b, alpha * alpha)) << "," << sgn << "\n";
                            svg.dot(to_double(b), to_double(alpha),
                                    sgn < 0 ? "#4878a8" : sgn > 0 ? "#c44e52" : "#55a868");
                        }
                    }
                    if (wall.kind == Wall::Kind::circle)
                        svg.arc(to_double(wall.center_b), std::sqrt(to_double(wall.radius_sq)));
                    if (wall.kind == Wall::Kind::vertical_line)
                        svg.line(to_double(wall.line_b), 0, to_double(wall.line_b),
                                 to_double(amax), "#000000", 2);
                    svg.caption("wall " + t.x + " vs " + t.y + ": " + render(wall.kind));
                    const std::string stem =
                        opt.scenario_name + "-task" + std::to_string(index) + "-wall";
                    result.artifacts.push_back({stem + ".csv", csv.str()});
                    result.artifacts.push_back({stem + ".svg", svg.finish()});
                    log.note("csv = " + stem + ".csv (" + std::to_string(n) + "x" +
                             std::to_string(n) + " grid)");
                    log.note("svg = " + stem + ".svg");
                    break;
                }
                case Task::Kind::equiv_params: {
                    const EquivalenceParams p =
                        solve_equivalence_params(ctx, *t.k, *t.lambda, opt.float_mode);
                    if (p.exact) {
                        log.note("omega_X = " + render(p.omega_x));
                        log.note("omega_Y = " + render(p.omega_y));
                        log.note("zeta = " + render(p.zeta_value));
                    } else {
                        char buf[200];
                        std::snprintf(buf, sizeof buf, "omega_X = %.12g + i*%.12g (float)",
                                      p.omega_x_f.real(), p.omega_x_f.imag());
                        log.note(buf);
                        std::snprintf(buf, sizeof buf, "omega_Y = %.12g + i*%.12g (float)",
                                      p.omega_y_f.real(), p.omega_y_f.imag());
                        log.note(buf);
                        std::snprintf(buf, sizeof buf, "zeta = %.12g + i*%.12g (float)",
                                      p.zeta_f.real(), p.zeta_f.imag());
                        log.note(buf);
                    }
                    break;
                }
                case Task::Kind::polarization: {
                    const Polarization p = induced_polarization(ctx, *t.a);
                    log.note("rank = " + render(p.rank));
                    log.note("slope = " + render(p.slope));
                    log.expect_eq(t.expect_rank, p.rank, "rank");
                    log.expect_eq(t.expect_slope, p.slope, "slope");
                    break;
                }
            }
        } catch (const error& e) {
            log.fail(e.what());
        }
    }

    out << "\nsummary: " << index << (index == 1 ? " task, " : " tasks, ") << result.failures
        << (result.failures == 1 ? " failure\n" : " failures\n");
    result.report = out.str();
    return result;
}

}  // namespace tiltfmt
