#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "planarmap/planarmap.hpp"

using namespace planarmap;

namespace {

struct Common {
    std::uint64_t seed = 1;
    std::size_t gb_max_pairs = GbBudget{}.max_pairs;
    int gb_max_degree = GbBudget{}.max_degree;
    GbBudget budget() const { return {gb_max_pairs, gb_max_degree}; }
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--gb-max-pairs", c.gb_max_pairs, "Groebner pair budget");
    sub->add_option("--gb-max-degree", c.gb_max_degree, "Groebner degree budget");
}

int exit_code(const Error& e) { return is_resource_failure(e.kind()) ? 3 : 2; }

PlaneCurve read_curve(const std::string& path) {
    Manifest m = read_manifest_file(path);
    return PlaneCurve(m.poly(m.find("B") ? "B" : "F"));
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) fail(ErrorKind::ParseError, "cannot write " + path);
    return file;
}

std::vector<Elem> parse_point(const Field& F, const std::string& text) {
    std::vector<Elem> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(F.from_int(std::stoll(item)));
    if (out.size() != 3) fail(ErrorKind::ParseError, "point needs three coordinates");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reconstruct planar maps of the projective plane from their branching curves"};
    app.require_subcommand(1);

    Common common;
    std::string input, output, map_path, curve_path, point;
    int degree = 0;
    ReconstructOptions ropt;

    auto* rec = app.add_subcommand("reconstruct", "reconstruct maps from a branching curve");
    add_common(rec, common);
    rec->add_option("--input", input, "curve manifest (key B)")->required();
    rec->add_option("--degree", degree, "polynomial degree d of the map (default: manifest d)");
    rec->add_option("--max-point-tries", ropt.max_point_tries, "slices per surface point search");
    rec->add_option("--samples-factor", ropt.samples_factor, "sample points per interpolation unknown");
    rec->add_option("--output", output, "write the first verified map as a manifest");

    auto* fwd = app.add_subcommand("forward", "generate a random map with its ramification and branching curves");
    add_common(fwd, common);
    fwd->add_option("--degree", degree, "polynomial degree d")->required()->check(CLI::Range(2, 4));
    fwd->add_option("--output", output, "output directory")->required();

    auto* ver = app.add_subcommand("verify", "check that a curve is the branching curve of a map");
    ver->add_option("--map", map_path, "map manifest (keys F0 F1 F2)")->required();
    ver->add_option("--curve", curve_path, "curve manifest (key B)")->required();

    auto* nor = app.add_subcommand("normalize", "linear normalization of a plane curve with nodes and cusps");
    add_common(nor, common);
    nor->add_option("--input", input, "curve manifest (key B)")->required();
    nor->add_option("--output", output, "forms file (default stdout)");

    auto* pre = app.add_subcommand("preimages", "count preimages of a target point");
    add_common(pre, common);
    pre->add_option("--map", map_path, "map manifest")->required();
    pre->add_option("--point", point, "target point a,b,c")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*rec) {
            Manifest m = read_manifest_file(input);
            PlaneCurve b(m.poly(m.find("B") ? "B" : "F"));
            if (!degree) {
                auto d = m.find("d");
                if (!d) fail(ErrorKind::InvalidArgument, "--degree not given and manifest has no d");
                degree = std::stoi(*d);
            }
            ropt.budget = common.budget();
            auto rep = reconstruct(b, degree, common.seed, ropt);
            write_report(std::cout, rep);
            if (rep.failure) return is_resource_failure(*rep.failure) ? 3 : 2;
            if (!output.empty()) {
                std::ofstream out(output);
                write_manifest(out, map_manifest(rep.maps.front()));
            }
            return 0;
        }
        if (*fwd) {
            Rng rng(common.seed);
            auto inst = forward_generate(degree, rng, common.budget());
            std::filesystem::create_directories(output);
            Manifest mm = map_manifest(inst.f);
            mm.set("R", to_string(inst.R.F));
            mm.set("seed", std::to_string(common.seed));
            std::ofstream(std::filesystem::path(output) / "map.txt") << [&] {
                std::ostringstream s;
                write_manifest(s, mm);
                return s.str();
            }();
            Manifest cm;
            cm.set("p", std::to_string(inst.B.ring().field.p()));
            cm.set("d", std::to_string(degree));
            cm.set("vars", "x,y,z");
            cm.set("seed", std::to_string(common.seed));
            cm.set("B", to_string(inst.B.F));
            std::ofstream cf(std::filesystem::path(output) / "curve.txt");
            write_manifest(cf, cm);
            std::cout << "d=" << degree << "\nattempts=" << inst.attempts << "\ndeg_R=" << inst.R.degree()
                      << "\ndeg_B=" << inst.B.degree() << "\noutput=" << output << '\n';
            return 0;
        }
        if (*ver) {
            PlanarMap f = map_from_manifest(read_manifest_file(map_path));
            PlaneCurve b = read_curve(curve_path);
            bool ok = verify_branching(f, b);
            std::cout << "verified=" << (ok ? "true" : "false") << '\n';
            return ok ? 0 : 2;
        }
        if (*nor) {
            Rng rng(common.seed);
            PlaneCurve b = read_curve(input);
            auto ln = linear_normalization(b, rng, 0, common.budget());
            std::ofstream file;
            std::ostream& out = open_out(output, file);
            out << "N=" << ln.curve.N() << "\nD=" << ln.curve.D() << '\n';
            for (auto& g : ln.curve.forms) out << to_string(g) << '\n';
            return 0;
        }
        if (*pre) {
            Rng rng(common.seed);
            PlanarMap f = map_from_manifest(read_manifest_file(map_path));
            auto q = parse_point(f.ring().field, point);
            auto [count, total] = preimage_count(f, q, rng, common.budget());
            std::cout << "rational_count=" << count << "\ntotal_degree=" << total << '\n';
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
