#include "gatelab/matrix_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>

namespace gatelab {

using nlohmann::json;

namespace {

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

Mat matrix_from_json(const json& j, const std::string& path) {
    if (!j.contains("re") || !j.contains("im"))
        throw std::invalid_argument(path + ": missing re/im fields");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    const std::size_t d = re.size();
    if (d == 0 || im.size() != d)
        throw std::invalid_argument(path + ": re and im must be equal-sized nonempty arrays");
    Mat m(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        if (re[r].size() != d || im[r].size() != d)
            throw std::invalid_argument(path + ": matrix rows must all have length " + std::to_string(d));
        for (std::size_t c = 0; c < d; ++c)
            m(static_cast<long>(r), static_cast<long>(c)) =
                cx(re[r][c].get<double>(), im[r][c].get<double>());
    }
    return m;
}

}  // namespace

BipartiteOperator load_matrix_json(const std::string& path) {
    const json j = read_json(path);
    if (!j.contains("dims") || !j.at("dims").is_array() || j.at("dims").size() != 2)
        throw std::invalid_argument(path + ": missing dims [n, m]");
    BipartiteOperator op;
    op.dims = {j.at("dims")[0].get<int>(), j.at("dims")[1].get<int>()};
    op.mat = matrix_from_json(j, path);
    op.validate();
    return op;
}

Mat load_square_matrix_json(const std::string& path) {
    return matrix_from_json(read_json(path), path);
}

void save_matrix_json(const std::string& path, const BipartiteOperator& op) {
    op.validate();
    const long d = op.mat.rows();
    json re = json::array(), im = json::array();
    for (long r = 0; r < d; ++r) {
        json re_row = json::array(), im_row = json::array();
        for (long c = 0; c < d; ++c) {
            re_row.push_back(op.mat(r, c).real());
            im_row.push_back(op.mat(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    json j{{"dims", {op.dims.n, op.dims.m}}, {"re", std::move(re)}, {"im", std::move(im)}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(1) << "\n";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
    json params = json::object();
    for (const auto& [k, v] : manifest.parameters) params[k] = v;
    json j{{"command", manifest.command},
           {"parameters", std::move(params)},
           {"library_version", kLibraryVersion},
           {"outputs", manifest.outputs},
           {"duration_seconds", manifest.duration_seconds}};
    if (manifest.has_seed) j["seed"] = manifest.seed;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << j.dump(1) << "\n";
}

}  // namespace gatelab
