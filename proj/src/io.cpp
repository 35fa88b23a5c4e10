#include "gqfi/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <json.hpp>

namespace gqfi {

using nlohmann::json;

namespace {

json matrix_part(const CMat& m, bool imag) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(imag ? m(i, j).imag() : m(i, j).real());
        rows.push_back(row);
    }
    return rows;
}

CMat read_matrix(const json& j, const char* re_key, const char* im_key, Eigen::Index n) {
    if (!j.contains(re_key)) throw Error(ErrorKind::InvalidArgument, std::string("json: missing ") + re_key);
    const json& re = j.at(re_key);
    const bool has_im = j.contains(im_key);
    if (!re.is_array() || static_cast<Eigen::Index>(re.size()) != n)
        throw Error(ErrorKind::DimensionMismatch, std::string("json: ") + re_key + " must have " + std::to_string(n) +
                                                      " rows");
    CMat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!re[i].is_array() || static_cast<Eigen::Index>(re[i].size()) != n)
            throw Error(ErrorKind::DimensionMismatch, std::string("json: ragged ") + re_key);
        for (Eigen::Index k = 0; k < n; ++k) {
            const double im = has_im ? j.at(im_key).at(i).at(k).get<double>() : 0.0;
            m(i, k) = cplx(re[i][k].get<double>(), im);
        }
    }
    return m;
}

CVec read_vector(const json& j, const char* re_key, const char* im_key, Eigen::Index n) {
    CVec v = CVec::Zero(n);
    if (!j.contains(re_key) || j.at(re_key).empty()) return v;
    const json& re = j.at(re_key);
    if (static_cast<Eigen::Index>(re.size()) != n)
        throw Error(ErrorKind::DimensionMismatch, std::string("json: ") + re_key + " has the wrong length");
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = cplx(re[i].get<double>(), j.contains(im_key) ? j.at(im_key).at(i).get<double>() : 0.0);
    return v;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("json: ") + e.what());
    }
}

BogoliubovTransform transform_from(const json& j, int N) {
    return BogoliubovTransform(read_matrix(j, "alpha_re", "alpha_im", N), read_matrix(j, "beta_re", "beta_im", N));
}

}  // namespace

std::string state_to_json(const GaussianState& s, int indent) {
    json j;
    j["n_modes"] = s.n_modes;
    std::vector<double> re, im;
    for (Eigen::Index i = 0; i < s.d.size(); ++i) {
        re.push_back(s.d(i).real());
        im.push_back(s.d(i).imag());
    }
    j["d_re"] = re;
    j["d_im"] = im;
    j["sigma_re"] = matrix_part(s.sigma, false);
    j["sigma_im"] = matrix_part(s.sigma, true);
    return j.dump(indent);
}

GaussianState state_from_json(const std::string& text) {
    json j = parse(text);
    try {
        const int n = j.at("n_modes").get<int>();
        if (n < 1) throw Error(ErrorKind::InvalidArgument, "state json: n_modes must be positive");
        CMat sigma = read_matrix(j, "sigma_re", "sigma_im", 2 * n);
        CVec d = read_vector(j, "d_re", "d_im", 2 * n);
        return make_state(sigma, d);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("state json: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
    out << content;
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

GaussianState load_state(const std::string& path) { return state_from_json(read_file(path)); }

void save_state(const std::string& path, const GaussianState& s) { write_file(path, state_to_json(s) + "\n"); }

ChannelSpec channel_from_json(const std::string& text) {
    json j = parse(text);
    ChannelSpec spec;
    try {
        if (j.contains("builtin")) {
            const std::string name = j.at("builtin").get<std::string>();
            if (name != "cavity") throw Error(ErrorKind::InvalidArgument, "channel json: unknown builtin " + name);
            CavityScenario sc;
            sc.tau = j.at("tau").get<double>();
            sc.a = j.value("a", 0.0);
            sc.N = j.value("N", 10);
            CavityChannel c = cavity_channel(sc);
            spec.transform = c.transform;
            spec.taylor = c.taylor;
            spec.description = "cavity";
            return spec;
        }
        const int N = j.at("N").get<int>();
        if (N < 1) throw Error(ErrorKind::InvalidArgument, "channel json: N must be positive");
        spec.transform = transform_from(j, N);
        spec.description = "explicit";
        if (j.contains("taylor")) {
            std::vector<CMat> alpha, beta;
            for (const json& order : j.at("taylor")) {
                BogoliubovTransform t = transform_from(order, N);
                alpha.push_back(t.alpha);
                beta.push_back(t.beta);
            }
            spec.taylor = make_taylor_channel(std::move(alpha), std::move(beta), j.value("tau", 0.0));
        }
        return spec;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("channel json: ") + e.what());
    }
}

ChannelSpec load_channel(const std::string& path) { return channel_from_json(read_file(path)); }

std::string channel_to_json(const BogoliubovTransform& t, int indent) {
    json j;
    j["N"] = t.N();
    j["alpha_re"] = matrix_part(t.alpha, false);
    j["alpha_im"] = matrix_part(t.alpha, true);
    j["beta_re"] = matrix_part(t.beta, false);
    j["beta_im"] = matrix_part(t.beta, true);
    return j.dump(indent);
}

namespace {
std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}
constexpr const char* kHeader = "tau,r,nu1,nu2,H,regime,N_trunc";
}  // namespace

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kHeader << "\n";
    for (const auto& r : rows)
        os << g12(r.tau) << ',' << g12(r.r) << ',' << g12(r.nu1) << ',' << g12(r.nu2) << ',' << g12(r.H) << ','
           << r.regime << ',' << r.N << "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    write_sweep_csv(os, rows);
    return os.str();
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || boost::algorithm::trim_copy(line) != kHeader)
        throw Error(ErrorKind::Io, "csv: missing or unexpected header");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        boost::algorithm::trim(line);
        if (line.empty()) continue;
        std::vector<std::string> f;
        boost::algorithm::split(f, line, boost::is_any_of(","));
        if (f.size() != 7) throw Error(ErrorKind::Io, "csv: expected 7 fields in '" + line + "'");
        try {
            rows.push_back({std::stod(f[0]), std::stod(f[1]), std::stod(f[2]), std::stod(f[3]), std::stod(f[4]), f[5],
                            std::stoi(f[6])});
        } catch (const std::exception&) {
            throw Error(ErrorKind::Io, "csv: bad number in '" + line + "'");
        }
    }
    return rows;
}

}  // namespace gqfi
