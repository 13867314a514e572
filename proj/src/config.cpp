#include "levy/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

namespace levy {

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Reads one table, remembering which keys were used so leftovers can be reported.
class Reader {
public:
    Reader(const toml::table& t, std::string path) : t_(t), path_(std::move(path)) {}

    const toml::node* node(const std::string& key) {
        seen_.insert(key);
        return t_.get(key);
    }

    template <class T>
    void number(const std::string& key, T& out) {
        const toml::node* n = node(key);
        if (!n) return;
        if constexpr (std::is_integral_v<T>) {
            auto v = n->value_exact<std::int64_t>();
            if (!v) fail(key, "expected an integer");
            if constexpr (std::is_unsigned_v<T>)
                if (*v < 0) fail(key, "must be nonnegative");
            out = T(*v);
        } else {
            if (n->is_integer())
                out = double(*n->value<std::int64_t>());
            else if (n->is_floating_point())
                out = *n->value<double>();
            else
                fail(key, "expected a number");
        }
    }

    void boolean(const std::string& key, bool& out) {
        const toml::node* n = node(key);
        if (!n) return;
        if (!n->is_boolean()) fail(key, "expected true or false");
        out = *n->value<bool>();
    }

    void string(const std::string& key, std::string& out) {
        const toml::node* n = node(key);
        if (!n) return;
        if (!n->is_string()) fail(key, "expected a string");
        out = *n->value<std::string>();
    }

    void numbers(const std::string& key, std::vector<double>& out) {
        const toml::node* n = node(key);
        if (!n) return;
        const toml::array* a = n->as_array();
        if (!a) fail(key, "expected an array of numbers");
        out.clear();
        for (std::size_t i = 0; i < a->size(); ++i) {
            const toml::node& e = *a->get(i);
            if (e.is_integer())
                out.push_back(double(*e.value<std::int64_t>()));
            else if (e.is_floating_point())
                out.push_back(*e.value<double>());
            else
                fail(key + "[" + std::to_string(i) + "]", "expected a number");
        }
    }

    void strings(const std::string& key, std::vector<std::string>& out) {
        const toml::node* n = node(key);
        if (!n) return;
        const toml::array* a = n->as_array();
        if (!a) fail(key, "expected an array of strings");
        out.clear();
        for (std::size_t i = 0; i < a->size(); ++i) {
            if (!a->get(i)->is_string()) fail(key + "[" + std::to_string(i) + "]", "expected a string");
            out.push_back(*a->get(i)->value<std::string>());
        }
    }

    const toml::table* table(const std::string& key) {
        const toml::node* n = node(key);
        if (!n) return nullptr;
        if (!n->is_table()) fail(key, "expected a table");
        return n->as_table();
    }

    const toml::array* array(const std::string& key) {
        const toml::node* n = node(key);
        if (!n) return nullptr;
        if (!n->is_array()) fail(key, "expected an array");
        return n->as_array();
    }

    void finish() const {
        for (const auto& [k, v] : t_)
            if (!seen_.count(std::string(k.str()))) throw ConfigError(join(path_, std::string(k.str())) + ": unknown key");
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw ConfigError(join(path_, key) + ": " + what);
    }

    std::string path(const std::string& key) const { return join(path_, key); }

private:
    const toml::table& t_;
    std::string path_;
    std::set<std::string> seen_;
};

Vec2 read_point(const toml::node* n, const std::string& path) {
    const toml::array* a = n ? n->as_array() : nullptr;
    if (!a || a->empty() || a->size() > 2) throw ConfigError(path + ": expected [x] or [x, y]");
    Vec2 p{0.0, 0.0};
    for (std::size_t i = 0; i < a->size(); ++i) {
        const toml::node& e = *a->get(i);
        if (e.is_integer())
            p[i] = double(*e.value<std::int64_t>());
        else if (e.is_floating_point())
            p[i] = *e.value<double>();
        else
            throw ConfigError(path + "[" + std::to_string(i) + "]: expected a number");
    }
    return p;
}

const toml::table& element_table(const toml::array& a, std::size_t i, const std::string& path) {
    const toml::table* t = a.get(i)->as_table();
    if (!t) throw ConfigError(path + "[" + std::to_string(i) + "]: expected a table");
    return *t;
}

void read_model(Reader& r, ModelConfig& m) {
    r.string("kind", m.kind);
    r.number("d", m.d);
    r.number("alpha", m.alpha);
    r.number("lambda", m.lambda);
    r.number("R", m.R);
    if (const toml::array* atoms = r.array("atoms")) {
        m.atoms.clear();
        for (std::size_t i = 0; i < atoms->size(); ++i) {
            const std::string p = r.path("atoms") + "[" + std::to_string(i) + "]";
            Reader ar(element_table(*atoms, i, r.path("atoms")), p);
            Atom a{};
            a.location = read_point(ar.node("location"), p + ".location");
            ar.number("mass", a.mass);
            ar.finish();
            m.atoms.push_back(a);
        }
    }
}

void read_family(Reader& r, FamilyConfig& f) {
    r.string("preset", f.preset);
    if (const toml::array* members = r.array("members")) {
        f.members.clear();
        for (std::size_t i = 0; i < members->size(); ++i) {
            const std::string p = r.path("members") + "[" + std::to_string(i) + "]";
            Reader mr(element_table(*members, i, r.path("members")), p);
            TestFunction tf;
            mr.string("label", tf.label);
            const toml::array* bumps = mr.array("bumps");
            if (!bumps) mr.fail("bumps", "missing");
            for (std::size_t j = 0; j < bumps->size(); ++j) {
                const std::string bp = p + ".bumps[" + std::to_string(j) + "]";
                Reader br(element_table(*bumps, j, p + ".bumps"), bp);
                Bump b;
                b.center = read_point(br.node("center"), bp + ".center");
                br.number("width", b.width);
                br.number("amplitude", b.amplitude);
                br.finish();
                tf.bumps.push_back(b);
            }
            mr.finish();
            f.members.push_back(std::move(tf));
        }
    }
}

template <class F>
void with_table(Reader& parent, const std::string& key, F&& f) {
    if (const toml::table* t = parent.table(key)) {
        Reader r(*t, parent.path(key));
        f(r);
        r.finish();
    }
}

toml::array point_array(const Vec2& p, int d) {
    toml::array a;
    for (int i = 0; i < d; ++i) a.push_back(p[i]);
    return a;
}

template <class T>
toml::array to_array(const std::vector<T>& v) {
    toml::array a;
    for (const T& x : v) a.push_back(x);
    return a;
}

void positive(double v, const std::string& path) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(path + ": must be positive");
}

}  // namespace

LevyModel ModelConfig::build() const {
    ModelKind k;
    try {
        k = parse_model_kind(kind);
    } catch (const std::invalid_argument&) {
        throw ConfigError("model.kind: unknown model kind '" + kind + "'");
    }
    try {
        switch (k) {
            case ModelKind::IsotropicStable: return LevyModel::isotropic_stable(d, alpha);
            case ModelKind::TemperedStable: return LevyModel::tempered_stable(d, alpha, lambda);
            case ModelKind::TruncatedStable: return LevyModel::truncated_stable(d, alpha, R);
            case ModelKind::CompoundPoisson: return LevyModel::compound_poisson(d, atoms);
            case ModelKind::AxisStable: return LevyModel::axis_stable(d, alpha);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
    throw ConfigError("model.kind: unsupported");
}

bool ModelConfig::operator==(const ModelConfig& o) const {
    if (kind != o.kind || d != o.d || alpha != o.alpha || lambda != o.lambda || R != o.R) return false;
    if (atoms.size() != o.atoms.size()) return false;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if (atoms[i].location != o.atoms[i].location || atoms[i].mass != o.atoms[i].mass) return false;
    return true;
}

std::vector<TestFunction> FamilyConfig::resolve(int d, double L) const {
    if (preset == "standard") return standard_family(d, L);
    return members;
}

bool RunConfig::operator==(const RunConfig& o) const {
    return model == o.model && grid == o.grid && jump == o.jump && grid_quadrature == o.grid_quadrature &&
           time == o.time && family == o.family && suites == o.suites && tolerances == o.tolerances &&
           hardy_stein == o.hardy_stein && square_fn == o.square_fn && multiplier == o.multiplier && mc == o.mc &&
           output_dir == o.output_dir && seed == o.seed;
}

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> s{"symbol", "density", "hardy-stein", "square-fn", "multiplier", "mc", "all"};
    return s;
}

void RunConfig::validate() const {
    for (std::size_t i = 0; i < suites.size(); ++i)
        if (std::find(known_suites().begin(), known_suites().end(), suites[i]) == known_suites().end())
            throw ConfigError("suites[" + std::to_string(i) + "]: unknown suite '" + suites[i] + "'");
    if (model.d != 1 && model.d != 2) throw ConfigError("model.d: must be 1 or 2");
    if (grid.d != model.d) throw ConfigError("grid.d: must equal model.d");
    if (grid.N < 8 || (grid.N & (grid.N - 1)) != 0) throw ConfigError("grid.N: must be a power of two >= 8");
    positive(grid.L, "grid.L");
    model.build();

    if (jump.eps < 0.0) throw ConfigError("quadrature.jump.eps: must be nonnegative");
    if (jump.rmax < 0.0) throw ConfigError("quadrature.jump.rmax: must be nonnegative");
    if (jump.n_radial < 2) throw ConfigError("quadrature.jump.n_radial: must be >= 2");
    if (jump.n_angular < 2) throw ConfigError("quadrature.jump.n_angular: must be >= 2");
    if (grid_quadrature.near_cells < 1) throw ConfigError("quadrature.grid.near_cells: must be >= 1");
    if (grid_quadrature.near_radius < 0.0) throw ConfigError("quadrature.grid.near_radius: must be nonnegative");
    if (grid_quadrature.log_panels_per_octave < 1)
        throw ConfigError("quadrature.grid.log_panels_per_octave: must be >= 1");
    if (grid_quadrature.n_angular < 4) throw ConfigError("quadrature.grid.n_angular: must be >= 4");
    positive(grid_quadrature.fold_extent, "quadrature.grid.fold_extent");
    positive(grid_quadrature.fold_extent_2d, "quadrature.grid.fold_extent_2d");
    positive(time.t_min, "quadrature.time.t_min");
    if (time.t_max < 0.0 || (time.t_max > 0.0 && time.t_max <= time.t_min))
        throw ConfigError("quadrature.time.t_max: must be 0 (auto) or greater than t_min");
    if (time.nodes_per_decade < 1) throw ConfigError("quadrature.time.nodes_per_decade: must be >= 1");
    positive(time.decay, "quadrature.time.decay");

    if (family.preset != "standard" && family.preset != "custom")
        throw ConfigError("family.preset: must be \"standard\" or \"custom\"");
    if (family.preset == "custom" && family.members.empty()) throw ConfigError("family.members: empty custom family");
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        const std::string p = "family.members[" + std::to_string(i) + "]";
        if (family.members[i].bumps.empty()) throw ConfigError(p + ".bumps: empty");
        for (std::size_t j = 0; j < family.members[i].bumps.size(); ++j)
            positive(family.members[i].bumps[j].width, p + ".bumps[" + std::to_string(j) + "].width");
    }

    const Tolerances& t = tolerances;
    const std::pair<double, const char*> tols[] = {
        {t.symbol, "symbol"},
        {t.density, "density"},
        {t.mass, "mass"},
        {t.chapman_kolmogorov, "chapman_kolmogorov"},
        {t.hardy_stein, "hardy_stein"},
        {t.hs_slope, "hs_slope"},
        {t.lemma_slack, "lemma_slack"},
        {t.ratio_seed_stability, "ratio_seed_stability"},
        {t.maximal, "maximal"},
        {t.isometry, "isometry"},
        {t.polarization, "polarization"},
        {t.norm_drift, "norm_drift"},
        {t.duality_slack, "duality_slack"},
        {t.multiplier_identity, "multiplier_identity"},
        {t.marcinkiewicz, "marcinkiewicz"},
        {t.pairing, "pairing"},
        {t.pairing_slack, "pairing_slack"},
        {t.sup_slack, "sup_slack"},
        {t.mc, "mc"},
    };
    for (const auto& [v, name] : tols) positive(v, std::string("tolerances.") + name);

    auto p_list = [](const std::vector<double>& ps, const std::string& path, double hi) {
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (!(ps[i] > 1.0) || !(ps[i] < hi)) throw ConfigError(path + "[" + std::to_string(i) + "]: out of range");
    };
    p_list(hardy_stein.p, "hardy_stein.p", INFINITY);
    p_list(hardy_stein.lemma_p, "hardy_stein.lemma_p", 2.0);
    p_list(hardy_stein.maximal_p, "hardy_stein.maximal_p", INFINITY);
    if (hardy_stein.lemma_samples < 10000) throw ConfigError("hardy_stein.lemma_samples: must be >= 10000");
    p_list(square_fn.p, "square_fn.p", INFINITY);
    if (square_fn.duality_pairs < 1) throw ConfigError("square_fn.duality_pairs: must be >= 1");
    if (!(square_fn.duality_p > 1.0 && square_fn.duality_p <= 2.0))
        throw ConfigError("square_fn.duality_p: must lie in (1, 2]");
    if (square_fn.divergence_N < 16 || (square_fn.divergence_N & (square_fn.divergence_N - 1)) != 0)
        throw ConfigError("square_fn.divergence_N: must be a power of two >= 16");
    if (!(multiplier.alpha > 0.0 && multiplier.alpha < 2.0)) throw ConfigError("multiplier.alpha: must lie in (0, 2)");
    if (multiplier.axis != 1 && multiplier.axis != 2) throw ConfigError("multiplier.axis: must be 1 or 2");
    if (multiplier.N < 8 || (multiplier.N & (multiplier.N - 1)) != 0)
        throw ConfigError("multiplier.N: must be a power of two >= 8");
    if (!(multiplier.p > 1.0)) throw ConfigError("multiplier.p: must exceed 1");
    positive(mc.eps, "mc.eps");
    positive(mc.T, "mc.T");
    positive(mc.density_eps, "mc.density_eps");
    positive(mc.density_t, "mc.density_t");
    if (mc.n < 1) throw ConfigError("mc.n: must be >= 1");
    if (mc.density_n < 1) throw ConfigError("mc.density_n: must be >= 1");
    if (mc.gstar_n < 1000) throw ConfigError("mc.gstar_n: must be >= 1000");
    if (mc.z_stride < 1) throw ConfigError("mc.z_stride: must be >= 1");
    if (output_dir.empty()) throw ConfigError("output_dir: empty");
    if (seed > std::uint64_t(INT64_MAX)) throw ConfigError("seed: must fit a signed 64-bit integer");
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    toml::table root;
    try {
        root = toml::parse(text, origin);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << origin << ":" << e.source().begin.line << ":" << e.source().begin.column << ": " << e.description();
        throw ConfigError(os.str());
    }
    RunConfig c;
    Reader r(root, "");
    r.number("seed", c.seed);
    r.string("output_dir", c.output_dir);
    r.strings("suites", c.suites);
    with_table(r, "model", [&](Reader& m) { read_model(m, c.model); });
    with_table(r, "grid", [&](Reader& g) {
        g.number("d", c.grid.d);
        g.number("N", c.grid.N);
        g.number("L", c.grid.L);
    });
    with_table(r, "quadrature", [&](Reader& q) {
        with_table(q, "jump", [&](Reader& j) {
            j.number("eps", c.jump.eps);
            j.number("rmax", c.jump.rmax);
            j.number("n_radial", c.jump.n_radial);
            j.number("n_angular", c.jump.n_angular);
        });
        with_table(q, "grid", [&](Reader& g) {
            GridQuadratureOptions& o = c.grid_quadrature;
            g.number("eps", o.eps);
            g.number("near_cells", o.near_cells);
            g.number("near_radius", o.near_radius);
            g.number("log_panels_per_octave", o.log_panels_per_octave);
            g.number("n_angular", o.n_angular);
            g.number("fold_extent", o.fold_extent);
            g.number("fold_extent_2d", o.fold_extent_2d);
            g.boolean("taylor_completion", o.taylor_completion);
        });
        with_table(q, "time", [&](Reader& t) {
            t.number("t_min", c.time.t_min);
            t.number("t_max", c.time.t_max);
            t.number("nodes_per_decade", c.time.nodes_per_decade);
            t.number("decay", c.time.decay);
        });
    });
    with_table(r, "family", [&](Reader& f) { read_family(f, c.family); });
    with_table(r, "tolerances", [&](Reader& t) {
        Tolerances& x = c.tolerances;
        t.number("symbol", x.symbol);
        t.number("density", x.density);
        t.number("mass", x.mass);
        t.number("chapman_kolmogorov", x.chapman_kolmogorov);
        t.number("hardy_stein", x.hardy_stein);
        t.number("hs_slope", x.hs_slope);
        t.number("lemma_slack", x.lemma_slack);
        t.number("ratio_seed_stability", x.ratio_seed_stability);
        t.number("maximal", x.maximal);
        t.number("isometry", x.isometry);
        t.number("polarization", x.polarization);
        t.number("norm_drift", x.norm_drift);
        t.number("duality_slack", x.duality_slack);
        t.number("multiplier_identity", x.multiplier_identity);
        t.number("marcinkiewicz", x.marcinkiewicz);
        t.number("pairing", x.pairing);
        t.number("pairing_slack", x.pairing_slack);
        t.number("sup_slack", x.sup_slack);
        t.number("mc", x.mc);
    });
    with_table(r, "hardy_stein", [&](Reader& h) {
        h.numbers("p", c.hardy_stein.p);
        h.numbers("lemma_p", c.hardy_stein.lemma_p);
        h.number("lemma_samples", c.hardy_stein.lemma_samples);
        h.numbers("maximal_p", c.hardy_stein.maximal_p);
        h.boolean("refinement", c.hardy_stein.refinement);
    });
    with_table(r, "square_fn", [&](Reader& s) {
        s.numbers("p", c.square_fn.p);
        s.boolean("refinement", c.square_fn.refinement);
        s.number("duality_pairs", c.square_fn.duality_pairs);
        s.number("duality_p", c.square_fn.duality_p);
        s.boolean("divergence", c.square_fn.divergence);
        s.number("divergence_N", c.square_fn.divergence_N);
    });
    with_table(r, "multiplier", [&](Reader& m) {
        m.number("alpha", c.multiplier.alpha);
        m.number("axis", c.multiplier.axis);
        m.number("N", c.multiplier.N);
        m.number("p", c.multiplier.p);
    });
    with_table(r, "mc", [&](Reader& m) {
        m.number("eps", c.mc.eps);
        m.number("T", c.mc.T);
        m.number("n", c.mc.n);
        m.number("gstar_n", c.mc.gstar_n);
        m.number("density_eps", c.mc.density_eps);
        m.number("density_n", c.mc.density_n);
        m.number("density_t", c.mc.density_t);
        m.number("z_stride", c.mc.z_stride);
        m.boolean("dump_paths", c.mc.dump_paths);
    });
    r.finish();
    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

std::string emit_config(const RunConfig& c) {
    toml::table root;
    root.insert("seed", std::int64_t(c.seed));
    root.insert("output_dir", c.output_dir);
    root.insert("suites", to_array(c.suites));

    toml::table model{{"kind", c.model.kind}, {"d", c.model.d}, {"alpha", c.model.alpha},
                      {"lambda", c.model.lambda}, {"R", c.model.R}};
    if (!c.model.atoms.empty()) {
        toml::array atoms;
        for (const Atom& a : c.model.atoms)
            atoms.push_back(toml::table{{"location", point_array(a.location, c.model.d)}, {"mass", a.mass}});
        model.insert("atoms", std::move(atoms));
    }
    root.insert("model", std::move(model));
    root.insert("grid", toml::table{{"d", c.grid.d}, {"N", c.grid.N}, {"L", c.grid.L}});

    const GridQuadratureOptions& o = c.grid_quadrature;
    toml::table quad;
    quad.insert("jump", toml::table{{"eps", c.jump.eps},
                                    {"rmax", c.jump.rmax},
                                    {"n_radial", c.jump.n_radial},
                                    {"n_angular", c.jump.n_angular}});
    quad.insert("grid", toml::table{{"eps", o.eps},
                                    {"near_cells", o.near_cells},
                                    {"near_radius", o.near_radius},
                                    {"log_panels_per_octave", o.log_panels_per_octave},
                                    {"n_angular", o.n_angular},
                                    {"fold_extent", o.fold_extent},
                                    {"fold_extent_2d", o.fold_extent_2d},
                                    {"taylor_completion", o.taylor_completion}});
    quad.insert("time", toml::table{{"t_min", c.time.t_min},
                                    {"t_max", c.time.t_max},
                                    {"nodes_per_decade", c.time.nodes_per_decade},
                                    {"decay", c.time.decay}});
    root.insert("quadrature", std::move(quad));

    toml::table family{{"preset", c.family.preset}};
    if (!c.family.members.empty()) {
        toml::array members;
        for (const TestFunction& tf : c.family.members) {
            toml::array bumps;
            for (const Bump& b : tf.bumps)
                bumps.push_back(toml::table{
                    {"center", point_array(b.center, c.model.d)}, {"width", b.width}, {"amplitude", b.amplitude}});
            members.push_back(toml::table{{"label", tf.label}, {"bumps", std::move(bumps)}});
        }
        family.insert("members", std::move(members));
    }
    root.insert("family", std::move(family));

    const Tolerances& t = c.tolerances;
    root.insert("tolerances", toml::table{{"symbol", t.symbol},
                                          {"density", t.density},
                                          {"mass", t.mass},
                                          {"chapman_kolmogorov", t.chapman_kolmogorov},
                                          {"hardy_stein", t.hardy_stein},
                                          {"hs_slope", t.hs_slope},
                                          {"lemma_slack", t.lemma_slack},
                                          {"ratio_seed_stability", t.ratio_seed_stability},
                                          {"maximal", t.maximal},
                                          {"isometry", t.isometry},
                                          {"polarization", t.polarization},
                                          {"norm_drift", t.norm_drift},
                                          {"duality_slack", t.duality_slack},
                                          {"multiplier_identity", t.multiplier_identity},
                                          {"marcinkiewicz", t.marcinkiewicz},
                                          {"pairing", t.pairing},
                                          {"pairing_slack", t.pairing_slack},
                                          {"sup_slack", t.sup_slack},
                                          {"mc", t.mc}});
    root.insert("hardy_stein", toml::table{{"p", to_array(c.hardy_stein.p)},
                                           {"lemma_p", to_array(c.hardy_stein.lemma_p)},
                                           {"lemma_samples", std::int64_t(c.hardy_stein.lemma_samples)},
                                           {"maximal_p", to_array(c.hardy_stein.maximal_p)},
                                           {"refinement", c.hardy_stein.refinement}});
    root.insert("square_fn", toml::table{{"p", to_array(c.square_fn.p)},
                                         {"refinement", c.square_fn.refinement},
                                         {"duality_pairs", c.square_fn.duality_pairs},
                                         {"duality_p", c.square_fn.duality_p},
                                         {"divergence", c.square_fn.divergence},
                                         {"divergence_N", c.square_fn.divergence_N}});
    root.insert("multiplier", toml::table{{"alpha", c.multiplier.alpha},
                                          {"axis", c.multiplier.axis},
                                          {"N", c.multiplier.N},
                                          {"p", c.multiplier.p}});
    root.insert("mc", toml::table{{"eps", c.mc.eps},
                                  {"T", c.mc.T},
                                  {"n", std::int64_t(c.mc.n)},
                                  {"gstar_n", std::int64_t(c.mc.gstar_n)},
                                  {"density_eps", c.mc.density_eps},
                                  {"density_n", std::int64_t(c.mc.density_n)},
                                  {"density_t", c.mc.density_t},
                                  {"z_stride", c.mc.z_stride},
                                  {"dump_paths", c.mc.dump_paths}});
    std::ostringstream os;
    os << root << "\n";
    return os.str();
}

json config_json(const RunConfig& cfg) {
    const toml::table t = toml::parse(emit_config(cfg));
    std::ostringstream os;
    os << toml::json_formatter{t};
    return json::parse(os.str());
}

}  // namespace levy
