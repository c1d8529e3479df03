#pragma once

#include "tiltfmt/chern.hpp"
#include "tiltfmt/fmt.hpp"
#include "tiltfmt/numeric.hpp"
#include "tiltfmt/stability.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace tiltfmt {

/*
 * Scenario files are line oriented.  '#' starts a comment, blank lines are
 * skipped.  A file holds an optional "seed N" line, one "context" block, any
 * number of "vector NAME" blocks and "task KIND" blocks; every block is a
 * run of "key = value" lines closed by "end".  Scalar values use the grammar
 * of the numeric module, vector components are comma separated.
 */
struct Task {
    enum class Kind { transform, charge, nu, bg, bg_chain, walls, equiv_params, polarization };

    Kind kind = Kind::transform;
    std::string input;
    std::string x;
    std::string y;
    std::optional<Scalar> omega;
    std::optional<int> k;
    std::optional<Rational> b;
    std::optional<Rational> alpha;
    std::optional<Rational> lambda;
    std::optional<Rational> a;
    std::optional<long> randomized;

    std::optional<std::vector<Scalar>> expect_v;
    std::optional<Scalar> expect_base;
    std::optional<Scalar> expect_value;
    bool expect_inf = false;
    std::optional<bool> expect_holds;
    std::optional<Scalar> expect_defect;
    std::optional<Wall::Kind> expect_kind;
    std::optional<Rational> expect_center;
    std::optional<Rational> expect_radius_sq;
    std::optional<Rational> expect_line;
    std::optional<Rational> expect_rank;
    std::optional<Rational> expect_slope;

    friend bool operator==(const Task&, const Task&) = default;
};

inline std::string render(Task::Kind k) {
    switch (k) {
        case Task::Kind::transform: return "transform";
        case Task::Kind::charge: return "charge";
        case Task::Kind::nu: return "nu";
        case Task::Kind::bg: return "bg";
        case Task::Kind::bg_chain: return "bg-chain";
        case Task::Kind::walls: return "walls";
        case Task::Kind::equiv_params: return "equiv-params";
        default: return "polarization";
    }
}

struct Scenario {
    std::uint64_t seed = 0;
    FmtContext ctx{1, 1, 0, 0, 1, 1};
    std::vector<std::pair<std::string, ChernVector>> vectors;
    std::vector<Task> tasks;

    const ChernVector* find_vector(const std::string& name) const {
        for (const auto& [n, v] : vectors)
            if (n == name) return &v;
        return nullptr;
    }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
    while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
    return s.substr(a, b - a);
}

struct ScenarioLine {
    int no;
    std::string text;
};

inline std::vector<ScenarioLine> scenario_lines(const std::string& text) {
    std::vector<ScenarioLine> out;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        raw = trim(raw);
        if (!raw.empty()) out.push_back({no, raw});
    }
    return out;
}

struct FieldValue {
    std::string value;
    int line = 0;
    bool used = false;
};

struct Block {
    std::string head;
    std::string arg;
    int line = 0;
    std::map<std::string, FieldValue> fields;
};

class ScenarioErrors {
  public:
    void add(int line, const std::string& msg) {
        messages_.push_back("line " + std::to_string(line) + ": " + msg);
    }

    void raise_if_any() const {
        if (messages_.empty()) return;
        std::string all = "scenario errors:";
        for (const std::string& m : messages_) all += "\n  " + m;
        throw error(all);
    }

    bool any() const { return !messages_.empty(); }

  private:
    std::vector<std::string> messages_;
};

inline bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (std::isalnum(static_cast<unsigned char>(c)) == 0 && c != '_' && c != '-') return false;
    return true;
}

class FieldReader {
  public:
    FieldReader(Block& block, ScenarioErrors& errs) : block_(block), errs_(errs) {}

    std::optional<std::string> raw(const std::string& key) {
        auto it = block_.fields.find(key);
        if (it == block_.fields.end()) return std::nullopt;
        it->second.used = true;
        line_ = it->second.line;
        return it->second.value;
    }

    int line() const { return line_; }

    std::optional<std::string> name(const std::string& key) {
        auto v = raw(key);
        if (!v) return std::nullopt;
        if (!is_identifier(*v)) {
            errs_.add(line_, "field '" + key + "' expects a name");
            return std::nullopt;
        }
        return v;
    }

    std::optional<Scalar> scalar(const std::string& key) {
        auto v = raw(key);
        if (!v) return std::nullopt;
        try {
            return parse_scalar(*v);
        } catch (const error& e) {
            errs_.add(line_, std::string("field '") + key + "': " + e.what());
            return std::nullopt;
        }
    }

    std::optional<Rational> rational(const std::string& key) {
        auto v = raw(key);
        if (!v) return std::nullopt;
        try {
            return parse_rational(*v);
        } catch (const error& e) {
            errs_.add(line_, std::string("field '") + key + "': " + e.what());
            return std::nullopt;
        }
    }

    std::optional<int> integer(const std::string& key) {
        auto q = rational(key);
        if (!q) return std::nullopt;
        if (denominator(*q) != 1) {
            errs_.add(line_, "field '" + key + "' expects an integer");
            return std::nullopt;
        }
        return numerator(*q).convert_to<int>();
    }

    std::optional<std::vector<Scalar>> scalar_list(const std::string& key) {
        auto v = raw(key);
        if (!v) return std::nullopt;
        std::vector<Scalar> out;
        std::size_t start = 0;
        const std::string& s = *v;
        for (;;) {
            std::size_t comma = s.find(',', start);
            const std::string piece = trim(s.substr(start, comma - start));
            try {
                out.push_back(parse_scalar(piece));
            } catch (const error& e) {
                errs_.add(line_, std::string("field '") + key + "': " + e.what());
                return std::nullopt;
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return out;
    }

    void finish(const std::string& what) {
        for (const auto& [key, field] : block_.fields)
            if (!field.used) errs_.add(field.line, "unknown field '" + key + "' in " + what);
    }

  private:
    Block& block_;
    ScenarioErrors& errs_;
    int line_ = 0;
};

}  // namespace detail

inline Scenario parse_scenario(const std::string& text) {
    using namespace detail;
    const std::vector<ScenarioLine> lines = scenario_lines(text);
    ScenarioErrors errs;

    std::optional<std::uint64_t> seed;
    std::vector<Block> blocks;
    std::size_t i = 0;
    while (i < lines.size()) {
        const ScenarioLine& ln = lines[i];
        std::istringstream head(ln.text);
        std::string word;
        head >> word;
        if (word == "seed") {
            std::string rest;
            std::getline(head, rest);
            rest = trim(rest);
            const bool digits = !rest.empty() && rest.size() <= 20 &&
                                std::all_of(rest.begin(), rest.end(), [](unsigned char c) {
                                    return std::isdigit(c) != 0;
                                });
            if (!digits) {
                errs.add(ln.no, "seed expects a nonnegative integer");
            } else {
                try {
                    seed = std::stoull(rest);
                } catch (...) {
                    errs.add(ln.no, "seed expects a nonnegative integer");
                }
            }
            ++i;
            continue;
        }
        if (word != "context" && word != "vector" && word != "task") {
            errs.add(ln.no, "expected 'seed', 'context', 'vector' or 'task', got '" + word + "'");
            ++i;
            continue;
        }
        Block b;
        b.head = word;
        b.line = ln.no;
        std::string arg;
        head >> arg;
        b.arg = arg;
        ++i;
        bool closed = false;
        while (i < lines.size()) {
            const ScenarioLine& fl = lines[i];
            if (fl.text == "end") {
                closed = true;
                ++i;
                break;
            }
            const std::size_t eq = fl.text.find('=');
            if (eq == std::string::npos) {
                errs.add(fl.no, "expected 'key = value' or 'end'");
                ++i;
                continue;
            }
            const std::string key = trim(fl.text.substr(0, eq));
            const std::string value = trim(fl.text.substr(eq + 1));
            if (!is_identifier(key)) {
                errs.add(fl.no, "bad field name '" + key + "'");
            } else if (b.fields.count(key) != 0) {
                errs.add(fl.no, "duplicate field '" + key + "'");
            } else {
                b.fields[key] = {value, fl.no, false};
            }
            ++i;
        }
        if (!closed) errs.add(b.line, "block '" + b.head + "' never closed with 'end'");
        blocks.push_back(std::move(b));
    }

    std::optional<FmtContext> ctx;
    for (Block& b : blocks) {
        if (b.head != "context") continue;
        if (ctx) {
            errs.add(b.line, "more than one context block");
            continue;
        }
        FieldReader f(b, errs);
        auto g = f.integer("g");
        auto r = f.rational("r");
        auto dX = f.rational("dX");
        auto dY = f.rational("dY");
        auto degX = f.rational("degX");
        auto degY = f.rational("degY");
        f.finish("context");
        if (!g || !r || !degX) {
            if (!g) errs.add(b.line, "context needs g");
            if (!r) errs.add(b.line, "context needs r");
            if (!degX) errs.add(b.line, "context needs degX");
            continue;
        }
        try {
            FmtContext c = make_context(*g, *r, dX.value_or(0), dY.value_or(0), *degX);
            if (degY && *degY != c.degY) {
                errs.add(b.line, "(degX/g!)*(degY/g!) = 1/r^2 violated");
                continue;
            }
            ctx = c;
        } catch (const error& e) {
            errs.add(b.line, e.what());
        }
    }
    if (!ctx) {
        errs.add(1, "scenario needs a context block");
        errs.raise_if_any();
    }

    Scenario sc;
    sc.ctx = *ctx;
    if (seed) sc.seed = *seed;

    for (Block& b : blocks) {
        if (b.head != "vector") continue;
        if (!is_identifier(b.arg)) {
            errs.add(b.line, "vector block needs a name");
            continue;
        }
        if (sc.find_vector(b.arg) != nullptr) {
            errs.add(b.line, "duplicate vector '" + b.arg + "'");
            continue;
        }
        FieldReader f(b, errs);
        auto base = f.scalar("base");
        auto v = f.scalar_list("v");
        f.finish("vector " + b.arg);
        if (!v) {
            errs.add(b.line, "vector '" + b.arg + "' needs v");
            continue;
        }
        if (v->size() != static_cast<std::size_t>(sc.ctx.g) + 1) {
            errs.add(b.line, "vector '" + b.arg + "' needs exactly g + 1 components");
            continue;
        }
        sc.vectors.emplace_back(b.arg, ChernVector{geometry_x(sc.ctx), base.value_or(Scalar{0}), *v});
    }

    for (Block& b : blocks) {
        if (b.head != "task") continue;
        Task t;
        if (b.arg == "transform") t.kind = Task::Kind::transform;
        else if (b.arg == "charge") t.kind = Task::Kind::charge;
        else if (b.arg == "nu") t.kind = Task::Kind::nu;
        else if (b.arg == "bg") t.kind = Task::Kind::bg;
        else if (b.arg == "bg-chain") t.kind = Task::Kind::bg_chain;
        else if (b.arg == "walls") t.kind = Task::Kind::walls;
        else if (b.arg == "equiv-params") t.kind = Task::Kind::equiv_params;
        else if (b.arg == "polarization") t.kind = Task::Kind::polarization;
        else {
            errs.add(b.line, "unknown task kind '" + b.arg + "'");
            continue;
        }
        FieldReader f(b, errs);
        auto need_vector = [&](const std::string& key) -> std::optional<std::string> {
            auto n = f.name(key);
            if (n && sc.find_vector(*n) == nullptr) {
                errs.add(f.line(), "unknown vector '" + *n + "'");
                return std::nullopt;
            }
            return n;
        };
        switch (t.kind) {
            case Task::Kind::transform: {
                auto in = need_vector("input");
                if (!in) errs.add(b.line, "task transform needs input");
                else t.input = *in;
                t.expect_v = f.scalar_list("expect_v");
                if (t.expect_v && t.expect_v->size() != static_cast<std::size_t>(sc.ctx.g) + 1)
                    errs.add(f.line(), "expect_v needs exactly g + 1 components");
                t.expect_base = f.scalar("expect_base");
                break;
            }
            case Task::Kind::charge: {
                auto in = need_vector("input");
                if (!in) errs.add(b.line, "task charge needs input");
                else t.input = *in;
                t.omega = f.scalar("omega");
                if (!t.omega) errs.add(b.line, "task charge needs omega");
                else if (scalar_sign(t.omega->im) <= 0)
                    errs.add(f.line(), "not a complexified ample class: Im <= 0");
                t.k = f.integer("k");
                if (t.k && (*t.k < 1 || *t.k > sc.ctx.g))
                    errs.add(f.line(), "truncation index out of range");
                t.expect_value = f.scalar("expect");
                break;
            }
            case Task::Kind::nu: {
                auto in = need_vector("input");
                if (!in) errs.add(b.line, "task nu needs input");
                else t.input = *in;
                t.b = f.rational("b");
                t.alpha = f.rational("alpha");
                if (!t.b || !t.alpha) errs.add(b.line, "task nu needs b and alpha");
                else if (*t.alpha <= 0) errs.add(b.line, "task nu needs alpha > 0");
                if (auto e = f.raw("expect")) {
                    if (*e == "inf") t.expect_inf = true;
                    else {
                        try {
                            t.expect_value = parse_scalar(*e);
                        } catch (const error& ex) {
                            errs.add(f.line(), std::string("field 'expect': ") + ex.what());
                        }
                    }
                }
                break;
            }
            case Task::Kind::bg: {
                auto in = need_vector("input");
                if (!in) errs.add(b.line, "task bg needs input");
                else t.input = *in;
                t.b = f.rational("b");
                t.alpha = f.rational("alpha");
                if (!t.b || !t.alpha) errs.add(b.line, "task bg needs b and alpha");
                else if (*t.alpha <= 0) errs.add(b.line, "task bg needs alpha > 0");
                if (auto e = f.raw("expect")) {
                    if (*e == "holds") t.expect_holds = true;
                    else if (*e == "fails") t.expect_holds = false;
                    else errs.add(f.line(), "field 'expect' is 'holds' or 'fails'");
                }
                t.expect_defect = f.scalar("expect_defect");
                break;
            }
            case Task::Kind::bg_chain: {
                t.lambda = f.rational("lambda");
                if (!t.lambda) errs.add(b.line, "task bg-chain needs lambda");
                else if (*t.lambda <= 0) errs.add(b.line, "task bg-chain needs lambda > 0");
                if (auto in = f.name("input")) {
                    if (sc.find_vector(*in) == nullptr) errs.add(f.line(), "unknown vector '" + *in + "'");
                    else t.input = *in;
                }
                if (auto n = f.integer("randomized")) {
                    if (*n < 1) errs.add(f.line(), "randomized expects a positive count");
                    else t.randomized = *n;
                }
                if (t.input.empty() == !t.randomized)
                    errs.add(b.line, "task bg-chain needs exactly one of input or randomized");
                if (sc.ctx.g != 3) errs.add(b.line, "task bg-chain needs g = 3");
                break;
            }
            case Task::Kind::walls: {
                auto xv = need_vector("x");
                auto yv = need_vector("y");
                if (!xv || !yv) errs.add(b.line, "task walls needs x and y");
                else {
                    t.x = *xv;
                    t.y = *yv;
                }
                if (auto e = f.raw("expect")) {
                    if (*e == "circle") t.expect_kind = Wall::Kind::circle;
                    else if (*e == "vertical_line") t.expect_kind = Wall::Kind::vertical_line;
                    else if (*e == "empty") t.expect_kind = Wall::Kind::empty;
                    else if (*e == "everywhere") t.expect_kind = Wall::Kind::everywhere;
                    else errs.add(f.line(), "field 'expect' names a wall kind");
                }
                t.expect_center = f.rational("center");
                t.expect_radius_sq = f.rational("radius_sq");
                t.expect_line = f.rational("line_b");
                break;
            }
            case Task::Kind::equiv_params: {
                t.k = f.integer("k");
                t.lambda = f.rational("lambda");
                if (!t.k || !t.lambda) errs.add(b.line, "task equiv-params needs k and lambda");
                else {
                    if (*t.lambda <= 0) errs.add(b.line, "task equiv-params needs lambda > 0");
                    if (*t.k < 1 || *t.k > sc.ctx.g - 1)
                        errs.add(b.line, "task equiv-params needs 1 <= k <= g - 1");
                }
                break;
            }
            case Task::Kind::polarization: {
                t.a = f.rational("a");
                if (!t.a) errs.add(b.line, "task polarization needs a");
                else if (*t.a <= 0) errs.add(b.line, "task polarization needs a > 0");
                t.expect_rank = f.rational("expect_rank");
                t.expect_slope = f.rational("expect_slope");
                break;
            }
        }
        f.finish("task " + b.arg);
        sc.tasks.push_back(std::move(t));
    }

    errs.raise_if_any();
    return sc;
}

inline std::string render_scenario(const Scenario& sc) {
    std::ostringstream out;
    out << "seed " << sc.seed << "\n\n";
    out << "context\n";
    out << "  g = " << sc.ctx.g << "\n";
    out << "  r = " << render(sc.ctx.r) << "\n";
    out << "  dX = " << render(sc.ctx.dX) << "\n";
    out << "  dY = " << render(sc.ctx.dY) << "\n";
    out << "  degX = " << render(sc.ctx.degX) << "\n";
    out << "end\n";
    for (const auto& [name, vec] : sc.vectors) {
        out << "\nvector " << name << "\n";
        out << "  base = " << render(vec.base) << "\n";
        out << "  v = ";
        for (std::size_t i = 0; i < vec.v.size(); ++i) {
            if (i != 0) out << ", ";
            out << render(vec.v[i]);
        }
        out << "\nend\n";
    }
    for (const Task& t : sc.tasks) {
        out << "\ntask " << render(t.kind) << "\n";
        if (!t.input.empty()) out << "  input = " << t.input << "\n";
        if (!t.x.empty()) out << "  x = " << t.x << "\n";
        if (!t.y.empty()) out << "  y = " << t.y << "\n";
        if (t.omega) out << "  omega = " << render(*t.omega) << "\n";
        if (t.k) out << "  k = " << *t.k << "\n";
        if (t.b) out << "  b = " << render(*t.b) << "\n";
        if (t.alpha) out << "  alpha = " << render(*t.alpha) << "\n";
        if (t.lambda) out << "  lambda = " << render(*t.lambda) << "\n";
        if (t.a) out << "  a = " << render(*t.a) << "\n";
        if (t.randomized) out << "  randomized = " << *t.randomized << "\n";
        if (t.expect_v) {
            out << "  expect_v = ";
            for (std::size_t i = 0; i < t.expect_v->size(); ++i) {
                if (i != 0) out << ", ";
                out << render((*t.expect_v)[i]);
            }
            out << "\n";
        }
        if (t.expect_base) out << "  expect_base = " << render(*t.expect_base) << "\n";
        if (t.expect_value) out << "  expect = " << render(*t.expect_value) << "\n";
        if (t.expect_inf) out << "  expect = inf\n";
        if (t.expect_holds) out << "  expect = " << (*t.expect_holds ? "holds" : "fails") << "\n";
        if (t.expect_defect) out << "  expect_defect = " << render(*t.expect_defect) << "\n";
        if (t.expect_kind) out << "  expect = " << render(*t.expect_kind) << "\n";
        if (t.expect_center) out << "  center = " << render(*t.expect_center) << "\n";
        if (t.expect_radius_sq) out << "  radius_sq = " << render(*t.expect_radius_sq) << "\n";
        if (t.expect_line) out << "  line_b = " << render(*t.expect_line) << "\n";
        if (t.expect_rank) out << "  expect_rank = " << render(*t.expect_rank) << "\n";
        if (t.expect_slope) out << "  expect_slope = " << render(*t.expect_slope) << "\n";
        out << "end\n";
    }
    return out.str();
}

}  // namespace tiltfmt
