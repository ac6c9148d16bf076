// toric: command-line driver over the toric library.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "toric/toric.hpp"

#ifndef TORIC_FIXTURE_DIR
#define TORIC_FIXTURE_DIR "fixtures"
#endif

namespace {

using nlohmann::json;
using namespace toric;

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct Common {
    std::string model;
    bool as_json = false;
    std::string out;
};

std::size_t thread_budget() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TORIC_THREADS")) {
        try {
            long cap = std::stol(env);
            if (cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidInput, "TORIC_THREADS must be a positive integer");
        }
    }
    return n;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
    }
    return out;
}

RatVector parse_rat_list(const std::string& s, const char* flag) {
    RatVector out;
    for (const auto& tok : split_list(s)) {
        try {
            out.push_back(parse_rational(tok));
        } catch (const Error& e) {
            throw Error(ErrorKind::InvalidInput, std::string(flag) + ": " + e.what());
        }
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& s, const char* flag) {
    std::vector<double> out;
    for (const auto& q : parse_rat_list(s, flag)) out.push_back(to_double(q));
    return out;
}

json rat_json(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

json int_json(const IntVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

// Writes to --out when given, stdout otherwise.
void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot open '" + c.out + "' for writing");
    f << text;
    if (!f) throw Error(ErrorKind::Io, "failed writing '" + c.out + "'");
}

void emit_json(const Common& c, const json& j) { emit(c, j.dump(2) + "\n"); }

json model_header(const ModelFile& m, const char* command) {
    return json{{"command", command}, {"model", m.name}, {"n", m.exponents.dim()}, {"size", m.exponents.size()}};
}

int cmd_ideal(const Common& c, std::int64_t bound, bool quadratic) {
    ModelFile m = load_model(c.model);
    if (bound == 0) bound = default_kernel_bound(m.exponents);
    auto bs = quadratic ? quadratic_binomials(m.exponents) : binomials_from_kernel(m.exponents, bound);
    if (c.as_json) {
        json j = model_header(m, "ideal");
        j["mode"] = quadratic ? "quadratic" : "kernel";
        if (!quadratic) j["bound"] = bound;
        j["binomials"] = json::array();
        for (const auto& b : bs)
            j["binomials"].push_back(
                {{"plus", int_json(b.plus)}, {"minus", int_json(b.minus)}, {"text", format_binomial(b, m.labels)}});
        emit_json(c, j);
        return exit_ok;
    }
    std::string text;
    for (const auto& b : bs) text += format_binomial(b, m.labels) + "\n";
    emit(c, bs.empty() ? "(no binomials)\n" : text);
    return exit_ok;
}

int cmd_degree(const Common& c) {
    ModelFile m = load_model(c.model);
    ExponentSet span = restrict_to_affine_span(m.exponents);
    Integer deg = implicit_degree(m.exponents);
    std::size_t dim = span.size() == 1 ? 0 : span.dim();
    Rational vol = dim == 0 ? Rational(1) : volume(convex_hull(span));
    if (c.as_json) {
        json j = model_header(m, "degree");
        j["degree"] = to_string(deg);
        j["dimension"] = dim;
        j["volume"] = to_string(vol);
        emit_json(c, j);
    } else {
        std::ostringstream s;
        s << "degree " << deg << "\n"
          << "dimension " << dim << "\n"
          << "volume " << to_string(vol) << " (lattice of the affine span)\n";
        emit(c, s.str());
    }
    return exit_ok;
}

int cmd_eval(const Common& c, const std::string& at) {
    ModelFile m = load_model(c.model);
    RatVector t = parse_rat_list(at, "--at");
    ControlScheme scheme = m.scheme();
    auto z = patch_point(m.exponents, scheme, std::span<const Rational>(t));
    std::optional<RatVector> affine;
    if (z.coords[0] != 0) affine = patch_eval(m.exponents, scheme, t);
    if (c.as_json) {
        json j = model_header(m, "eval");
        j["parameter"] = rat_json(t);
        j["homogeneous"] = rat_json(z.coords);
        j["affine"] = affine ? rat_json(*affine) : json(nullptr);
        emit_json(c, j);
    } else {
        std::vector<std::string> hs, as;
        for (const auto& x : z.coords) hs.push_back(to_string(x));
        std::string text = "homogeneous [" + join(hs, ", ") + "]\n";
        if (affine) {
            for (const auto& x : *affine) as.push_back(to_string(x));
            text += "affine (" + join(as, ", ") + ")\n";
        } else {
            text += "affine (at infinity)\n";
        }
        emit(c, text);
    }
    return exit_ok;
}

int cmd_invert(const Common& c, const std::string& u, double tol, int max_iter) {
    ModelFile m = load_model(c.model);
    MomentQuery q{m.exponents, m.weights_as_double(), parse_double_list(u, "--u"), tol, max_iter};
    BasisValues b = moment_inverse(q);
    if (c.as_json) {
        json j = model_header(m, "invert");
        j["target"] = q.target;
        j["parameter"] = b.parameter;
        j["basis"] = b.values;
        j["residual"] = b.residual;
        j["iterations"] = b.iterations;
        emit_json(c, j);
    } else {
        std::vector<std::string> ts, fs;
        for (double x : b.parameter) ts.push_back(format_double(x));
        for (double x : b.values) fs.push_back(format_double(x));
        std::ostringstream s;
        s << "t (" << join(ts, ", ") << ")\n"
          << "f (" << join(fs, ", ") << ")\n"
          << "residual " << format_double(b.residual) << " after " << b.iterations << " iterations\n";
        emit(c, s.str());
    }
    return exit_ok;
}

// Linear precision over an interior grid of conv(A); passes when the worst
// residual is within 10·tol.
int cmd_precision(const Common& c, std::size_t grid, double tol) {
    ModelFile m = load_model(c.model);
    const auto& a = m.exponents;
    auto w = m.weights_as_double();
    auto nodes = detail::interior_grid(a, grid);
    double worst = 0.0, trip = 0.0, sum_err = 0.0;
    for (const auto& u : nodes) {
        BasisValues b = moment_inverse(MomentQuery{a, w, u, tol, 100});
        double total = 0.0;
        for (double f : b.values) total += f;
        sum_err = std::max(sum_err, std::abs(total - 1.0));
        auto back = weighted_moment(a, w, b.parameter);
        for (std::size_t r = 0; r < a.dim(); ++r) {
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) s += b.values[i] * static_cast<double>(a[i][r]);
            worst = std::max(worst, std::abs(s - u[r]));
            trip = std::max(trip, std::abs(back[r] - u[r]));
        }
    }
    bool pass = !nodes.empty() && worst <= 10 * tol;
    if (c.as_json) {
        json j = model_header(m, "precision-check");
        j["nodes"] = nodes.size();
        j["max_residual"] = worst;
        j["round_trip"] = trip;
        j["partition_error"] = sum_err;
        j["pass"] = pass;
        emit_json(c, j);
    } else {
        std::ostringstream s;
        s << (pass ? "PASS" : "FAIL") << "  " << nodes.size() << " interior nodes\n"
          << "max residual " << format_double(worst) << "\n"
          << "round trip " << format_double(trip) << "\n"
          << "partition of unity " << format_double(sum_err) << "\n";
        emit(c, s.str());
    }
    return pass ? exit_ok : exit_fail;
}

int cmd_implicitize(const Common& c, unsigned degree) {
    ModelFile m = load_model(c.model);
    ControlScheme scheme = m.scheme();
    std::vector<ImplicitForm> forms;
    std::optional<unsigned> found;
    Integer toric_deg = implicit_degree(m.exponents);
    if (degree > 0) {
        forms = implicitize(m.exponents, scheme, degree);
        if (!forms.empty()) found = degree;
    } else {
        auto r = degree_search(m.exponents, scheme);
        forms = std::move(r.forms);
        found = r.degree;
    }
    if (c.as_json) {
        json j = model_header(m, "implicitize");
        j["toric_degree"] = to_string(toric_deg);
        j["degree"] = found ? json(*found) : json(nullptr);
        j["forms"] = json::array();
        for (const auto& f : forms) {
            json terms = json::array();
            auto mons = f.monomials();
            for (std::size_t i = 0; i < mons.size(); ++i)
                if (f.coeffs[i] != 0) terms.push_back({{"exponent", mons[i]}, {"coefficient", to_string(f.coeffs[i])}});
            j["forms"].push_back({{"terms", terms}, {"term_count", f.term_count()}, {"text", format_form(f, m.variables)}});
        }
        emit_json(c, j);
        return exit_ok;
    }
    std::string text;
    if (forms.empty()) {
        text = degree > 0 ? "(no form of degree " + std::to_string(degree) + ")\n"
                          : "(no form up to degree " + to_string(toric_deg) + ")\n";
    } else {
        text = "degree " + std::to_string(*found) + ", " + std::to_string(forms.size()) + " form(s)\n";
        for (const auto& f : forms) text += format_form(f, m.variables) + "\n";
    }
    emit(c, text);
    return exit_ok;
}

int cmd_mesh(const Common& c, std::size_t grid, const std::string& eps, bool via_moment, const std::string& format,
             double tol) {
    ModelFile m = load_model(c.model);
    ControlScheme scheme = m.scheme();
    SamplingOptions opt;
    opt.threads = thread_budget();
    Mesh mesh;
    if (via_moment) {
        mesh = nonneg_patch_via_moment(m.exponents, scheme, grid, m.weights_as_double(), opt, tol);
    } else {
        std::vector<SignVector> orthants;
        if (eps == "all") {
            orthants = SignVector::all(m.exponents.dim());
        } else if (eps.empty()) {
            orthants = {SignVector::identity(m.exponents.dim())};
        } else {
            std::vector<int> s;
            for (const auto& tok : split_list(eps)) {
                if (tok != "1" && tok != "+1" && tok != "-1")
                    throw Error(ErrorKind::InvalidInput, "--eps: entries must be 1 or -1");
                s.push_back(tok == "-1" ? -1 : 1);
            }
            orthants = {SignVector(s)};
        }
        for (const auto& e : orthants) mesh.append(orthant_sample(m.exponents, scheme, e, grid, opt));
    }
    if (mesh.dropped > 0) std::cerr << "toric: dropped " << mesh.dropped << " grid node(s)\n";
    std::ostringstream body;
    if (format == "csv")
        export_csv(mesh, body);
    else
        export_obj(mesh, body);
    if (c.as_json) {
        json j = model_header(m, "mesh");
        j["vertices"] = mesh.vertices.size();
        j["faces"] = mesh.faces.size();
        j["dropped"] = mesh.dropped;
        j["format"] = format;
        if (!c.out.empty()) emit(c, body.str());
        else j["data"] = body.str();
        std::cout << j.dump(2) << "\n";
    } else {
        emit(c, body.str());
    }
    return exit_ok;
}

int cmd_chart(const Common& c, std::size_t grid) {
    ModelFile m = load_model(c.model);
    if (m.charts.empty()) throw Error(ErrorKind::InvalidInput, "model field 'charts': none defined");
    RatVector axis = rational_axis(grid);
    json j = model_header(m, "chart");
    j["charts"] = json::array();
    std::string text;
    for (const auto& ch : m.charts) {
        auto pts = chart_sample(ch.generators, axis);
        json jp = json::array();
        text += "# " + ch.name + "\n";
        for (const auto& p : pts) {
            jp.push_back(rat_json(p));
            std::vector<std::string> cs;
            for (const auto& x : p) cs.push_back(to_string(x));
            text += join(cs, " ") + "\n";
        }
        j["charts"].push_back({{"name", ch.name}, {"points", jp}});
    }
    if (c.as_json)
        emit_json(c, j);
    else
        emit(c, text);
    return exit_ok;
}

int cmd_verify(const Common& c) {
    std::filesystem::path dir = c.model.empty() ? std::filesystem::path(TORIC_FIXTURE_DIR) : std::filesystem::path(c.model);
    if (!std::filesystem::is_directory(dir)) dir = dir.parent_path();
    if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::Io, "fixture directory not found");
    auto results = verify_fixtures(dir);
    bool all = true;
    json j{{"command", "verify"}, {"checks", json::array()}};
    std::string text;
    for (const auto& r : results) {
        all = all && r.pass;
        j["checks"].push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        text += std::string(r.pass ? "PASS" : "FAIL") + "  " + r.name + "  (" + r.detail + ")\n";
    }
    j["pass"] = all;
    if (c.as_json)
        emit_json(c, j);
    else
        emit(c, text);
    return all ? exit_ok : exit_fail;
}

bool is_usage_error(ErrorKind k) {
    switch (k) {
    case ErrorKind::NoConvergence:
    case ErrorKind::EnumerationLimit:
        return false;
    default:
        return true;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toric varieties, patches and their implicit equations"};
    app.require_subcommand(1);
    Common common;

    auto add_common = [&](CLI::App* sub, bool model_required = true) {
        auto* opt = sub->add_option("model", common.model,
                                    model_required ? "Model file (JSON)" : "Fixture directory (default: the shipped fixtures)");
        if (model_required) opt->required()->check(CLI::ExistingFile);
        sub->add_flag("--json", common.as_json, "Machine-readable output");
        sub->add_option("--out", common.out, "Write output to this path");
    };

    std::int64_t bound = 0;
    bool quadratic = false;
    auto* ideal = app.add_subcommand("ideal", "Binomials of the toric ideal");
    add_common(ideal);
    ideal->add_option("--bound", bound, "Sup-norm bound on kernel vectors (default: coordinate spread)")
        ->check(CLI::PositiveNumber);
    ideal->add_flag("--quadratic", quadratic, "Only the quadratic binomials");

    auto* degree = app.add_subcommand("degree", "Implicit degree n!·Vol(conv A)");
    add_common(degree);

    std::string at;
    auto* eval = app.add_subcommand("eval", "Evaluate the patch at a torus point");
    add_common(eval);
    eval->add_option("--at", at, "Parameter, comma separated rationals (e.g. 1/2,3)")->required();

    std::string u;
    double tol = 1e-12;
    int max_iter = 100;
    auto* invert = app.add_subcommand("invert", "Invert the algebraic moment map");
    add_common(invert);
    invert->add_option("--u", u, "Point of the polytope interior, comma separated")->required();
    invert->add_option("--tol", tol, "Residual tolerance")->check(CLI::PositiveNumber);
    invert->add_option("--max-iter", max_iter, "Newton iteration cap")->check(CLI::PositiveNumber);

    unsigned form_degree = 0;
    auto* impl = app.add_subcommand("implicitize", "Implicit equation by exact interpolation");
    add_common(impl);
    impl->add_option("--degree", form_degree, "Degree of the forms (default: smallest up to the toric degree)")
        ->check(CLI::PositiveNumber);

    std::size_t grid = 20;
    std::string eps;
    bool via_moment = false;
    std::string format = "obj";
    double mesh_tol = 1e-12;
    auto* mesh = app.add_subcommand("mesh", "Sample a real piece of the patch into a triangle mesh");
    add_common(mesh);
    mesh->add_option("--grid", grid, "Nodes per axis")->check(CLI::PositiveNumber);
    mesh->add_option("--eps", eps, "Orthant sign vector (e.g. 1,-1) or 'all'");
    mesh->add_flag("--moment", via_moment, "Parametrize the nonnegative part by the polytope");
    mesh->add_option("--format", format, "obj or csv")->check(CLI::IsMember({"obj", "csv"}));
    mesh->add_option("--tol", mesh_tol, "Moment inversion tolerance")->check(CLI::PositiveNumber);

    std::size_t precision_grid = 11;
    double precision_tol = 1e-12;
    auto* precision = app.add_subcommand("precision-check", "Linear precision of the moment basis on an interior grid");
    add_common(precision);
    precision->add_option("--grid", precision_grid, "Nodes per axis of the bounding box")->check(CLI::PositiveNumber);
    precision->add_option("--tol", precision_tol, "Inversion tolerance")->check(CLI::PositiveNumber);

    std::size_t chart_grid = 20;
    auto* chart = app.add_subcommand("chart", "Exact samples of the model's affine charts");
    add_common(chart);
    chart->add_option("--grid", chart_grid, "Parameter values per axis")->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "Run the reference checks over a fixture directory");
    add_common(verify, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*ideal) return cmd_ideal(common, bound, quadratic);
        if (*degree) return cmd_degree(common);
        if (*eval) return cmd_eval(common, at);
        if (*invert) return cmd_invert(common, u, tol, max_iter);
        if (*impl) return cmd_implicitize(common, form_degree);
        if (*mesh) {
            if (grid < 2 && !via_moment) throw Error(ErrorKind::InvalidInput, "--grid must be at least 2");
            return cmd_mesh(common, grid, eps, via_moment, format, mesh_tol);
        }
        if (*precision) return cmd_precision(common, precision_grid, precision_tol);
        if (*chart) return cmd_chart(common, chart_grid);
        if (*verify) return cmd_verify(common);
    } catch (const Error& e) {
        std::cerr << "toric: " << e.what() << "\n";
        return is_usage_error(e.kind()) ? exit_usage : exit_fail;
    } catch (const std::exception& e) {
        std::cerr << "toric: " << e.what() << "\n";
        return exit_fail;
    }
    return exit_usage;
}
