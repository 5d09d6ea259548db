#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zetareg/scenario.hpp"

using namespace zetareg;

namespace {

struct InputDoc {
    FieldRef field;
    SpecPtr variety;
    std::optional<SNCConfig> snc;
};

InputDoc load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    InputDoc doc;
    if (!j.contains("field"))
        throw ParseError("input needs a \"field\" object {p, e}");
    unsigned long p = j["field"].at("p").get<unsigned long>();
    unsigned e = j["field"].at("e").get<unsigned>();
    doc.field = build_field(p, e);
    if (j.contains("variety"))
        doc.variety = variety_from_json(j["variety"], doc.field);
    if (j.contains("snc")) doc.snc = snc_from_json(j["snc"]);
    return doc;
}

std::string poly_str(const PolyZ& p) {
    if (p.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0 && p.size() > 1) continue;
        std::string term;
        Int c = p[i];
        if (!out.empty()) {
            term += c < 0 ? " - " : " + ";
            c = abs(c);
        } else if (c < 0) {
            term += "-";
            c = abs(c);
        }
        if (i == 0 || c != 1) term += c.get_str();
        if (i > 0) {
            if (c != 1) term += "*";
            term += "t";
            if (i > 1) term += "^" + std::to_string(i);
        }
        out += term;
    }
    return out.empty() ? "0" : out;
}

RationalFunctionQ compute_zeta(const InputDoc& doc, size_t depth,
                               std::optional<std::pair<size_t, size_t>> bound,
                               size_t guard, unsigned jobs) {
    if (!doc.variety) throw ParseError("input has no variety");
    if (bound && depth == 0) depth = bound->first + bound->second + guard;
    if (depth == 0) depth = 8;
    std::vector<Int> counts;
    for (size_t n = 1; n <= depth; ++n)
        counts.push_back(count_points(doc.variety, static_cast<unsigned>(n), jobs));
    return reconstruct_rational(zeta_series(counts), bound, guard);
}

std::string group_str(const FGAbGroup& g) {
    if (g.is_trivial()) return "0";
    std::string out;
    auto app = [&](const std::string& s) {
        if (!out.empty()) out += " + ";
        out += s;
    };
    if (g.free_rank == 1) app("Z");
    else if (g.free_rank > 1) app("Z^" + std::to_string(g.free_rank));
    for (const auto& d : g.torsion) app("Z/" + d.get_str());
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact zeta-function and weight-homology computations over "
                 "finite fields"};
    app.require_subcommand(1);

    std::string input_path;
    unsigned n = 1;
    unsigned jobs = 0;
    size_t depth = 0;
    size_t guard = 2;
    std::vector<size_t> bound_vec;
    long at_r = 0;
    std::vector<std::string> scenario_paths;
    std::string json_out;

    auto* count = app.add_subcommand("count", "Count points over F_{q^n}");
    count->add_option("--input", input_path, "JSON file with field + variety")
        ->required();
    count->add_option("--n", n, "extension degree")->default_val(1);
    count->add_option("--jobs", jobs, "worker threads");

    auto* zeta = app.add_subcommand("zeta", "Reconstruct Z(t) from counts");
    zeta->add_option("--input", input_path)->required();
    zeta->add_option("--depth", depth, "number of counts N_1..N_depth");
    zeta->add_option("--bound", bound_vec,
                     "numerator and denominator degree bounds")
        ->expected(2);
    zeta->add_option("--guard", guard, "extra stabilization coefficients");
    zeta->add_option("--jobs", jobs);

    auto* sv = app.add_subcommand("special-value",
                                  "Leading Laurent coefficient at t = q^{-r}");
    sv->add_option("--input", input_path)->required();
    sv->add_option("--at", at_r, "integer r")->required();
    sv->add_option("--depth", depth);
    sv->add_option("--bound", bound_vec)->expected(2);
    sv->add_option("--guard", guard);
    sv->add_option("--jobs", jobs);

    auto* wh = app.add_subcommand("weight-homology",
                                  "Homology of the boundary complex");
    wh->add_option("--input", input_path, "JSON file with an \"snc\" object")
        ->required();

    auto* verify = app.add_subcommand("verify", "Run verification scenarios");
    verify->add_option("--scenario", scenario_paths, "scenario JSON file(s)")
        ->required();
    verify->add_option("--jobs", jobs, "parallel scenarios / point counting");
    verify->add_option("--json", json_out, "write JSON reports to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        std::optional<std::pair<size_t, size_t>> bound;
        if (bound_vec.size() == 2) bound = {bound_vec[0], bound_vec[1]};

        if (count->parsed()) {
            InputDoc doc = load_input(input_path);
            if (!doc.variety) throw ParseError("input has no variety");
            std::cout << count_points(doc.variety, n, jobs).get_str() << "\n";
        } else if (zeta->parsed()) {
            InputDoc doc = load_input(input_path);
            RationalFunctionQ Z = compute_zeta(doc, depth, bound, guard, jobs);
            std::cout << "Z(t) = (" << poly_str(Z.num) << ") / ("
                      << poly_str(Z.den) << ")\n";
        } else if (sv->parsed()) {
            InputDoc doc = load_input(input_path);
            RationalFunctionQ Z = compute_zeta(doc, depth, bound, guard, jobs);
            LaurentData lv =
                special_value(Z, doc.field->cardinality(), at_r);
            std::cout << "point t = " << rat_string(lv.point) << "\n"
                      << "order " << lv.order << "\n"
                      << "leading " << rat_string(lv.leading) << "\n";
        } else if (wh->parsed()) {
            InputDoc doc = load_input(input_path);
            if (!doc.snc) throw ParseError("input has no \"snc\" object");
            WeightComplex W = build_snc_complex(*doc.snc, Lambda::Z());
            std::vector<FGAbGroup> H = weight_homology(W);
            for (size_t j = 0; j < H.size(); ++j)
                std::cout << "H_" << j << " = " << group_str(H[j]) << "\n";
        } else if (verify->parsed()) {
            std::vector<Json> reports;
            int code = run_scenario_files(scenario_paths, jobs, std::cout,
                                          &reports);
            if (!json_out.empty()) {
                std::ofstream out(json_out);
                if (!out) throw ParseError("cannot write " + json_out);
                Json all = Json::array();
                for (auto& r : reports) all.push_back(std::move(r));
                out << all.dump(2) << "\n";
            }
            return code;
        }
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
