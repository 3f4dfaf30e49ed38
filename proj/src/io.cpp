#include "softextrap/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "softextrap/errors.hpp"

namespace softextrap {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\"");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\"");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw DomainError("line " + std::to_string(line_no) + ": not a number: '" + cell + "'");
    }
}

const char* pipeline_name(Pipeline p) { return p == Pipeline::hermite ? "hermite" : "generic"; }

Pipeline pipeline_from_name(const std::string& name) {
    if (name == "hermite") return Pipeline::hermite;
    if (name == "generic") return Pipeline::generic;
    throw DomainError("unknown pipeline: " + name);
}

json plan_json(const DegreePlan& plan) {
    return json{{"alpha", plan.params.alpha},
                {"tau", plan.params.tau},
                {"lambda", plan.params.lambda},
                {"pipeline", pipeline_name(plan.pipeline)},
                {"eps", plan.eps},
                {"q", plan.q},
                {"n", plan.n},
                {"a_n", plan.a_n},
                {"r_n", plan.r_n},
                {"rho", plan.rho},
                {"mu", plan.mu},
                {"beta_alpha", plan.beta_alpha},
                {"robin", plan.robin},
                {"window_edge", plan.window_edge()},
                {"forbidden_radius", plan.forbidden_radius()}};
}

DegreePlan plan_of(const json& j) {
    DegreePlan plan;
    plan.params.alpha = j.at("alpha").get<double>();
    plan.params.tau = j.at("tau").get<double>();
    plan.params.lambda = j.at("lambda").get<double>();
    plan.pipeline = pipeline_from_name(j.value("pipeline", std::string("generic")));
    plan.eps = j.at("eps").get<double>();
    plan.q = j.at("q").get<double>();
    plan.n = j.at("n").get<int>();
    plan.a_n = j.at("a_n").get<double>();
    plan.r_n = j.at("r_n").get<double>();
    plan.rho = j.at("rho").get<double>();
    plan.mu = j.at("mu").get<double>();
    plan.beta_alpha = j.at("beta_alpha").get<double>();
    plan.robin = j.at("robin").get<double>();
    return plan;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace

SampleSet read_samples_csv(std::istream& in, double alpha) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) break;
    }
    if (trim(line).empty()) throw DomainError("sample CSV is empty");
    const auto header = split_row(line);
    const auto find = [&](const char* name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw DomainError(std::string("sample CSV header lacks column '") + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t ix = find("x");
    const std::size_t ig = find("g");

    std::vector<double> x, g;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_row(line);
        if (cells.size() <= std::max(ix, ig))
            throw DomainError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                              " columns");
        x.push_back(parse_cell(cells[ix], line_no));
        g.push_back(parse_cell(cells[ig], line_no));
    }
    SampleSet samples = SampleSet::from_unsorted(std::move(x), std::move(g), alpha);
    samples.validate();
    return samples;
}

SampleSet read_samples_csv_file(const std::string& path, double alpha) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_samples_csv(in, alpha);
}

void write_samples_csv(std::ostream& out, const SampleSet& samples) {
    out << "x,g\n";
    char buf[80];
    for (std::size_t j = 0; j < samples.nodes.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.16e,%.16e\n", samples.nodes[j], samples.values[j]);
        out << buf;
    }
}

std::string plan_to_json(const DegreePlan& plan, int indent) { return plan_json(plan).dump(indent); }

DegreePlan plan_from_json(const std::string& text) {
    try {
        return plan_of(parse(text));
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed plan: ") + e.what());
    }
}

std::string model_to_json(const FittedModel& model, const GridReport* report, int indent) {
    json j{{"basis",
            {{"kind", to_string(model.basis.kind)},
             {"scale", model.basis.scale},
             {"max_degree", model.basis.max_degree}}},
           {"coefficients", model.coefficients},
           {"plan", plan_json(model.plan)}};
    if (report) {
        j["grid"] = {{"extent_ok", report->extent_ok},
                     {"density_ok", report->density_ok},
                     {"max_gap", report->max_gap},
                     {"required_gap", report->required_gap},
                     {"inner_extent", report->inner_extent},
                     {"outer_extent", report->outer_extent},
                     {"delta_window", {report->delta_window_lo, report->delta_window_hi}}};
    }
    return j.dump(indent);
}

FittedModel model_from_json(const std::string& text) {
    const json j = parse(text);
    try {
        FittedModel model;
        const auto& b = j.at("basis");
        model.basis.kind = basis_kind_from_string(b.at("kind").get<std::string>());
        model.basis.scale = b.at("scale").get<double>();
        model.basis.max_degree = b.at("max_degree").get<int>();
        model.basis.validate();
        model.coefficients = j.at("coefficients").get<std::vector<double>>();
        if (model.coefficients.empty() || model.degree() > model.basis.max_degree)
            throw DomainError("coefficient count does not match basis degree");
        model.plan = plan_of(j.at("plan"));
        return model;
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed model: ") + e.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace softextrap
