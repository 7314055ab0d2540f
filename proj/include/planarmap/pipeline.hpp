#pragma once

#include <chrono>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "planarmap/degree2.hpp"
#include "planarmap/io.hpp"
#include "planarmap/verpar.hpp"

namespace planarmap {

/// base-point freeness: the three forms have no common projective zero.
inline bool base_point_free(const PlanarMap& f, GbBudget budget = {}) {
    return projective_empty(Ideal(f.ring(), f.as_vector()), budget);
}

/// Image of the ramification curve, interpolated through more than e^2
/// distinct image points (e = d deg R); a form of degree e through them is
/// divisible by the image, so a one-dimensional kernel pins it down.
inline PlaneCurve branching_curve(const PlanarMap& f, const PlaneCurve& r, Rng& rng, int max_lines = 1'000'000) {
    const Field& F = f.ring().field;
    int e = f.degree() * r.degree();
    std::size_t want = static_cast<std::size_t>(e) * static_cast<std::size_t>(e) + 1;
    std::set<std::vector<Elem>> seen;
    std::vector<std::vector<Elem>> pts;
    int lines = 0;
    while (pts.size() < want) {
        if (++lines > max_lines) fail(ErrorKind::PointSearchExhausted, "not enough rational points on R");
        for (auto& x : points_on_random_line(r.F, rng)) {
            auto y = f(x);
            auto u = normalize_point(F, {y[0], y[1], y[2]});
            if (seen.insert(u).second) pts.push_back(std::move(u));
        }
    }
    MPoly b(f.ring());
    try {
        b = interpolate_curve(f.ring(), pts, e, e);
    } catch (const Error& err) {
        if (err.kind() == ErrorKind::NotPrincipal) fail(ErrorKind::NotGeneric, "image of R is not a curve of degree d deg R");
        throw;
    }
    if (b.is_zero()) fail(ErrorKind::NotGeneric, "no branching form of the expected degree");
    return PlaneCurve(b);
}

/// Image of R by elimination: <R(x), 2x2 minors of [(u,v,w); f(x)]>
/// saturated by a random source linear form, source variables eliminated.
inline PlaneCurve branching_curve_by_elimination(const PlanarMap& f, const PlaneCurve& r, Rng& rng, GbBudget budget = {}) {
    const Field& F = f.ring().field;
    Ring big(F, 6);
    std::vector<int> src{0, 1, 2};
    std::array<MPoly, 3> img{f.forms[0].remap(big, src), f.forms[1].remap(big, src), f.forms[2].remap(big, src)};
    std::array<MPoly, 3> u{MPoly::variable(big, 3), MPoly::variable(big, 4), MPoly::variable(big, 5)};
    std::vector<MPoly> gens{r.F.remap(big, src)};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            gens.push_back(u[static_cast<std::size_t>(i)] * img[static_cast<std::size_t>(j)] -
                           u[static_cast<std::size_t>(j)] * img[static_cast<std::size_t>(i)]);
    std::vector<Elem> lc{F.random_nonzero(rng), F.random(rng), F.random(rng), 0, 0, 0};
    Ideal sat = saturate(Ideal(big, gens), MPoly::linear(big, lc), budget);
    Ideal el = eliminate(sat, 3, budget);
    Ring r3(F, 3);
    std::vector<int> back{-1, -1, -1, 0, 1, 2};
    if (el.gens.size() != 1) fail(ErrorKind::NotPrincipal, "eliminated ideal has " + std::to_string(el.gens.size()) + " generators");
    return PlaneCurve(el.gens[0].remap(r3, back).monic());
}

/// True iff B(F0, F1, F2) is divisible by R^2, R the ramification determinant.
inline bool verify_branching(const PlanarMap& f, const PlaneCurve& b) {
    if (b.degree() != 3 * f.degree() * (f.degree() - 1)) return false;
    MPoly r = ramification_det(f).F;
    MPoly pulled = b.F.compose(f.as_vector());
    if (pulled.is_zero()) return false;
    try {
        MPoly q = exact_divide(pulled, r);
        exact_divide(q, r);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InexactDivision) return false;
        throw;
    }
    return true;
}

struct ForwardInstance {
    PlanarMap f;
    PlaneCurve R;
    PlaneCurve B;
    int attempts = 1;
};

/// Random map of degree d with smooth ramification curve and its branching
/// curve. A smooth plane curve is irreducible, so smoothness covers the
/// irreducibility screen.
inline ForwardInstance forward_generate(int d, Rng& rng, GbBudget budget = {}, int max_attempts = 20) {
    if (d < 2 || d > 4) fail(ErrorKind::InvalidArgument, "forward generation supports d in {2,3,4}");
    Field F;
    Ring r(F, 3);
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        PlanarMap f(random_form(r, d, rng), random_form(r, d, rng), random_form(r, d, rng));
        if (!base_point_free(f, budget)) continue;
        MPoly det = determinant({{f.forms[0].derivative(0), f.forms[0].derivative(1), f.forms[0].derivative(2)},
                                 {f.forms[1].derivative(0), f.forms[1].derivative(1), f.forms[1].derivative(2)},
                                 {f.forms[2].derivative(0), f.forms[2].derivative(1), f.forms[2].derivative(2)}});
        if (det.is_zero() || det.total_degree() != 3 * (d - 1)) continue;
        PlaneCurve rc(det);
        if (!is_smooth(rc, budget)) continue;
        try {
            PlaneCurve b = branching_curve(f, rc, rng);
            if (b.degree() != 3 * d * (d - 1)) continue;
            return {f, rc, b, attempt};
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotGeneric) throw;
        }
    }
    fail(ErrorKind::NotGeneric, "no generic map in " + std::to_string(max_attempts) + " attempts");
}

/// Number of rational preimages of q and the degree of the fibre scheme.
inline std::pair<std::size_t, std::size_t> preimage_count(const PlanarMap& f, std::span<const Elem> q, Rng& rng,
                                                          GbBudget budget = {}) {
    const Field& F = f.ring().field;
    std::vector<MPoly> gens;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            MPoly m = f.forms[static_cast<std::size_t>(j)].scaled(q[static_cast<std::size_t>(i)]) -
                      f.forms[static_cast<std::size_t>(i)].scaled(q[static_cast<std::size_t>(j)]);
            if (!m.is_zero()) gens.push_back(m);
        }
    (void)F;
    auto sol = solve_projective(Ideal(f.ring(), gens), rng, budget);
    return {sol.points.size(), sol.total_degree};
}

/// Options for one reconstruction run.
struct ReconstructOptions {
    GbBudget budget{};
    int max_point_tries = 200;
    int samples_factor = 2;
    int held_out = 10;
    int max_pairs_retry = 8;
};

struct ReconstructionReport {
    int d = 0;
    std::uint64_t seed = 0;
    std::string stage = "input";
    std::optional<ErrorKind> failure;
    std::string message;
    std::vector<std::pair<std::string, std::string>> values;
    std::vector<std::pair<std::string, double>> timings;
    std::vector<PlanarMap> maps;
    std::vector<bool> verified;

    bool ok() const { return !failure && !maps.empty(); }
    void set(const std::string& k, const std::string& v) {
        for (auto& [key, val] : values)
            if (key == k) {
                val = v;
                return;
            }
        values.emplace_back(k, v);
    }
    void set(const std::string& k, std::size_t v) { set(k, std::to_string(v)); }
    std::string get(const std::string& k) const {
        for (auto& [key, val] : values)
            if (key == k) return val;
        return {};
    }
};

namespace detail {

class StageTimer {
public:
    StageTimer(ReconstructionReport& r, std::string name) : r_(r), name_(std::move(name)), t0_(std::chrono::steady_clock::now()) {
        r_.stage = name_;
    }
    ~StageTimer() {
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
        r_.timings.emplace_back(name_, s);
    }

private:
    ReconstructionReport& r_;
    std::string name_;
    std::chrono::steady_clock::time_point t0_;
};

inline void reconstruct_degree2_into(ReconstructionReport& rep, const PlaneCurve& b, Rng& rng, const ReconstructOptions& opt) {
    HessianPencilSolution sol = [&] {
        StageTimer t(rep, "hessian_pencil");
        return hessian_pencil(b, rng, opt.budget);
    }();
    rep.set("singular_points", sol.singular_points);
    rep.set("dual_degree", static_cast<std::size_t>(sol.dual_cubic.degree()));
    rep.set("dual_cubic", to_string(sol.dual_cubic.F));
    std::string mu;
    for (std::size_t k = 0; k < sol.mu_poly.coeffs().size(); ++k) mu += (k ? "," : "") + std::to_string(sol.mu_poly[k]);
    rep.set("mu_poly", mu);
    rep.set("mu_poly_degree", static_cast<std::size_t>(sol.mu_poly.degree()));
    rep.set("mu_roots", sol.mu_roots.size());
    if (sol.maps.empty()) fail(ErrorKind::NoRationalRoot, "mu polynomial has no root in the prime field");
    StageTimer t(rep, "verify");
    for (auto& f : sol.maps) {
        bool ok = verify_branching(f, b);
        if (ok) {
            rep.maps.push_back(f);
            rep.verified.push_back(true);
        }
    }
    if (rep.maps.empty()) fail(ErrorKind::VerificationFailed, "no pencil map passes the branching check");
}

inline void reconstruct_general_into(ReconstructionReport& rep, const PlaneCurve& b, int d, Rng& rng, const ReconstructOptions& opt) {
    const Field& F = b.ring().field;
    std::optional<SingularLocusData> sing;
    {
        StageTimer t(rep, "singular_locus");
        sing.emplace(singular_radical(b, rng, opt.budget));
    }
    rep.set("singular_points", sing->point_count);
    rep.set("jacobian_degree", sing->mult_total);
    auto want = static_cast<std::size_t>(singularity_count_expected(d));
    if (sing->point_count != want)
        fail(ErrorKind::WrongSingularityCount, std::to_string(sing->point_count) + " singular points, expected " + std::to_string(want));

    std::optional<LinearNormalizationResult> ln;
    {
        StageTimer t(rep, "linear_normalization");
        ln.emplace(linear_normalization(b, *sing, rng, d, opt.budget));
    }
    rep.set("adjoint_degree", static_cast<std::size_t>(ln->adjoint.degree));
    rep.set("adjoint_piece_dim", ln->adjoint.piece_dim);
    rep.set("quotient_piece_dim", ln->piece_dim);
    rep.set("N", static_cast<std::size_t>(ln->curve.N()));

    std::optional<VeroneseIdeal> v;
    {
        StageTimer t(rep, "quadrics");
        QuadricSpace qs = image_quadrics(ln->curve);
        rep.set("quadrics", qs.dim());
        if (d == 3) {
            LinearSyzygySpace syz = linear_syzygies(qs, F);
            rep.set("linear_syzygies", syz.dim());
            v.emplace(veronese_from_syzygies(qs, syz, F));
        } else {
            v.emplace(veronese_from_quadrics(qs, d));
        }
        rep.set("veronese_quadrics", v->dim());
        auto [d2, d3] = veronese_piece_dims(*v);
        rep.set("veronese_cubic_piece", d3);
        if (d2 != expected_veronese_quadrics(d) || d3 != expected_veronese_cubics(d))
            fail(ErrorKind::NotABranchingCurve, "quadrics do not cut out a Veronese surface");
    }

    std::vector<SurfacePoint> pool;
    PointSearchStats stats;
    std::optional<ProjectionSystem> ps;
    {
        StageTimer t(rep, "projection");
        SurfacePoint y1 = find_point(*v, rng, opt.max_point_tries, &stats, &pool, opt.budget);
        if (!verify_veronese(*v, y1.coords)) fail(ErrorKind::NotABranchingCurve, "Veronese check failed at a surface point");
        for (int k = 0; k < opt.max_pairs_retry && !ps; ++k) {
            SurfacePoint y2 = find_point(*v, rng, opt.max_point_tries, &stats, &pool, opt.budget);
            if (normalize_point(F, y2.coords) == normalize_point(F, y1.coords)) continue;
            try {
                ps.emplace(projection_system(*v, y1, y2));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::DegenerateConfiguration && e.kind() != ErrorKind::SingularPoint) throw;
            }
        }
        if (!ps) fail(ErrorKind::DegenerateConfiguration, "dim J != 3 for every point pair");
    }
    rep.set("osc_d", ps->osc1_d);
    rep.set("osc_d_minus_1", ps->osc1_dm1);
    rep.set("osc_meet_first", ps->first);
    rep.set("osc_meet_second", ps->second);
    rep.set("dim_J", ps->forms.rows());

    std::vector<SurfacePoint> samples;
    {
        StageTimer t(rep, "samples");
        std::size_t need = static_cast<std::size_t>(opt.samples_factor) * 3 * binom(d + 2, 2) + static_cast<std::size_t>(opt.held_out);
        // points on the line through y1, y2 have no image
        auto dedupe = [&] {
            std::set<std::vector<Elem>> seen;
            std::vector<SurfacePoint> out;
            for (auto& p : pool) {
                auto q = ps->forms.apply(p.coords);
                if (std::all_of(q.begin(), q.end(), [](Elem x) { return x == 0; })) continue;
                if (seen.insert(normalize_point(F, p.coords)).second) out.push_back(p);
            }
            return out;
        };
        samples = dedupe();
        while (samples.size() < need) {
            find_point(*v, rng, opt.max_point_tries, &stats, &pool, opt.budget);
            samples = dedupe();
        }
        std::set<std::vector<Elem>> images;
        for (auto& s : samples) {
            auto q = ps->forms.apply(s.coords);
            if (!images.insert(normalize_point(F, q)).second)
                fail(ErrorKind::DegenerateConfiguration, "projection identifies two sample points");
        }
    }
    rep.set("samples", samples.size());
    rep.set("slice_draws", stats.draws);
    rep.set("slice_degree_sum", stats.degree_sum);
    rep.set("slice_rational_points", stats.rational_points);

    PlanarMap f = [&] {
        StageTimer t(rep, "interpolation");
        std::vector<SurfacePoint> fit(samples.begin(), samples.end() - opt.held_out);
        std::vector<SurfacePoint> hold(samples.end() - opt.held_out, samples.end());
        PlanarMap m = interpolate_map(ps->forms, fit, d);
        if (!map_fits_samples(m, ps->forms, hold)) fail(ErrorKind::InterpolationDefect, "held-out samples violate the interpolated map");
        return m;
    }();

    StageTimer t(rep, "verify");
    if (!verify_branching(f, b)) fail(ErrorKind::VerificationFailed, "B(f) is not divisible by R^2");
    rep.maps.push_back(f);
    rep.verified.push_back(true);
}

}  // namespace detail

/// Reconstructs planar maps of degree d whose branching curve is b. Failures
/// are recorded in the report rather than thrown.
inline ReconstructionReport reconstruct(const PlaneCurve& b, int d, std::uint64_t seed, const ReconstructOptions& opt = {}) {
    ReconstructionReport rep;
    rep.d = d;
    rep.seed = seed;
    Rng rng(seed);
    try {
        if (d < 2) fail(ErrorKind::InvalidArgument, "degree parameter must be at least 2");
        rep.set("curve_degree", static_cast<std::size_t>(b.degree()));
        if (b.degree() != 3 * d * (d - 1))
            fail(ErrorKind::WrongDegree, "curve degree " + std::to_string(b.degree()) + ", expected " + std::to_string(3 * d * (d - 1)));
        if (d == 2)
            detail::reconstruct_degree2_into(rep, b, rng, opt);
        else
            detail::reconstruct_general_into(rep, b, d, rng, opt);
        rep.stage = "done";
    } catch (const Error& e) {
        rep.failure = e.kind();
        rep.message = e.what();
        rep.maps.clear();
        rep.verified.clear();
    }
    return rep;
}

/// Key/value manifest: `key=value` lines, `#` comments.
struct Manifest {
    std::vector<std::pair<std::string, std::string>> entries;

    std::optional<std::string> find(const std::string& k) const {
        for (auto& [key, v] : entries)
            if (key == k) return v;
        return std::nullopt;
    }
    std::string at(const std::string& k) const {
        auto v = find(k);
        if (!v) fail(ErrorKind::ParseError, "manifest lacks '" + k + "'");
        return *v;
    }
    void set(const std::string& k, const std::string& v) {
        for (auto& [key, val] : entries)
            if (key == k) {
                val = v;
                return;
            }
        entries.emplace_back(k, v);
    }

    Field field() const { return Field(static_cast<std::uint32_t>(std::stoul(find("p").value_or(std::to_string(Field::kDefaultPrime))))); }
    std::vector<std::string> names() const {
        std::vector<std::string> out;
        std::stringstream ss(find("vars").value_or("x,y,z"));
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(item);
        return out;
    }
    Ring ring() const { return Ring(field(), static_cast<int>(names().size())); }
    MPoly poly(const std::string& k) const { return parse_poly(at(k), ring(), names()); }
};

inline Manifest read_manifest(std::istream& in) {
    Manifest m;
    std::string line;
    while (std::getline(in, line)) {
        auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(ErrorKind::ParseError, "manifest line without '=': " + line);
        std::string k = line.substr(start, eq - start), v = line.substr(eq + 1);
        while (!k.empty() && (k.back() == ' ' || k.back() == '\t')) k.pop_back();
        while (!v.empty() && (v.back() == '\r' || v.back() == ' ')) v.pop_back();
        m.set(k, v);
    }
    return m;
}

inline Manifest read_manifest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
    return read_manifest(in);
}

inline void write_manifest(std::ostream& out, const Manifest& m) {
    for (auto& [k, v] : m.entries) out << k << '=' << v << '\n';
}

/// Manifest holding a map as F0, F1, F2.
inline Manifest map_manifest(const PlanarMap& f) {
    Manifest m;
    m.set("p", std::to_string(f.ring().field.p()));
    m.set("d", std::to_string(f.degree()));
    m.set("vars", "x,y,z");
    for (int i = 0; i < 3; ++i) m.set("F" + std::to_string(i), to_string(f.forms[static_cast<std::size_t>(i)]));
    return m;
}

inline PlanarMap map_from_manifest(const Manifest& m) { return PlanarMap(m.poly("F0"), m.poly("F1"), m.poly("F2")); }

/// Human-readable summary followed by a key=value block.
inline void write_report(std::ostream& out, const ReconstructionReport& r) {
    out << "reconstruction d=" << r.d << " seed=" << r.seed << '\n';
    if (r.failure)
        out << "result: FAILED at stage " << r.stage << ": " << to_string(*r.failure) << " (" << r.message << ")\n";
    else
        out << "result: " << r.maps.size() << " verified map(s)\n";
    for (auto& [k, s] : r.timings) out << "  time " << k << ": " << s << " s\n";
    for (std::size_t i = 0; i < r.maps.size(); ++i)
        for (int j = 0; j < 3; ++j) out << "map" << i << ".F" << j << " = " << to_string(r.maps[i].forms[static_cast<std::size_t>(j)]) << '\n';
    out << "---\n";
    out << "d=" << r.d << '\n' << "seed=" << r.seed << '\n' << "stage=" << r.stage << '\n';
    out << "status=" << (r.failure ? std::string(to_string(*r.failure)) : std::string("ok")) << '\n';
    for (auto& [k, v] : r.values) out << k << '=' << v << '\n';
    out << "maps=" << r.maps.size() << '\n';
}

}  // namespace planarmap
