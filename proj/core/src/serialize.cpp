#include "wavestab/serialize.hpp"

#include <json.hpp>

#include "wavestab/errors.hpp"

namespace wavestab {

namespace {

using nlohmann::json;

json spectral_to_json_obj(const SpectralFunction& f) {
  json j;
  j["n_max"] = f.order();
  std::vector<double> re, im;
  re.reserve(f.order() + 1);
  im.reserve(f.order() + 1);
  for (int n = 0; n <= f.order(); ++n) {
    re.push_back(f.coeff(n).real());
    im.push_back(f.coeff(n).imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

SpectralFunction spectral_from_json_obj(const json& j) {
  const int n_max = j.at("n_max").get<int>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (static_cast<int>(re.size()) != n_max + 1 || im.size() != re.size()) {
    throw parameter_error("spectral function: coefficient arrays do not match n_max");
  }
  std::vector<complexd> c(n_max + 1);
  for (int n = 0; n <= n_max; ++n) c[n] = complexd(re[n], im[n]);
  if (c[0].imag() != 0.0) throw parameter_error("spectral function: mean must be real");
  return SpectralFunction::from_coefficients(std::move(c));
}

json state_to_json_obj(const WaveState& state) {
  json j;
  j["k"] = state.params.k;
  j["h"] = state.params.h;
  j["g"] = state.params.g;
  j["mu"] = state.params.mu;
  j["m"] = state.params.m;
  j["B"] = state.params.b;
  j["w"] = spectral_to_json_obj(state.w);
  return j;
}

WaveState state_from_json_obj(const json& j) {
  WaveParameters p;
  p.k = j.at("k").get<double>();
  p.h = j.at("h").get<double>();
  p.g = j.at("g").get<double>();
  p.mu = j.at("mu").get<double>();
  p.m = j.at("m").get<double>();
  p.b = j.at("B").get<double>();
  return WaveState(p, spectral_from_json_obj(j.at("w")));
}

json point_to_json_obj(const BranchPoint& pt) {
  json j;
  j["eps"] = pt.eps;
  j["mu"] = pt.mu;
  j["residual_norm"] = pt.residual_norm;
  j["newton_iters"] = pt.newton_iters;
  j["min_graph"] = pt.min_graph;
  j["d_mean"] = pt.d_mean;
  j["bernoulli"] = pt.bernoulli;
  j["state"] = state_to_json_obj(pt.state);
  return j;
}

BranchPoint point_from_json_obj(const json& j) {
  BranchPoint pt{j.at("eps").get<double>(),
                 j.at("mu").get<double>(),
                 state_from_json_obj(j.at("state")),
                 j.at("residual_norm").get<double>(),
                 j.at("newton_iters").get<int>(),
                 j.at("min_graph").get<double>(),
                 j.at("d_mean").get<double>(),
                 j.at("bernoulli").get<double>()};
  return pt;
}

}  // namespace

std::string to_json(const SpectralFunction& f) { return spectral_to_json_obj(f).dump(); }

SpectralFunction spectral_function_from_json(const std::string& text) {
  return spectral_from_json_obj(json::parse(text));
}

std::string to_json(const WaveState& state) { return state_to_json_obj(state).dump(); }

WaveState wave_state_from_json(const std::string& text) {
  return state_from_json_obj(json::parse(text));
}

std::string to_json(const Branch& branch) {
  json j;
  j["mode"] = branch.mode;
  json base;
  base["k"] = branch.base.k;
  base["h"] = branch.base.h;
  base["g"] = branch.base.g;
  base["mu"] = branch.base.mu;
  j["base"] = std::move(base);
  j["truncated"] = branch.truncated;
  if (branch.truncated) j["warning"] = branch.warning;
  json pts = json::array();
  for (const BranchPoint& pt : branch.points) pts.push_back(point_to_json_obj(pt));
  j["points"] = std::move(pts);
  return j.dump(2);
}

Branch branch_from_json(const std::string& text) {
  const json j = json::parse(text);
  Branch b;
  b.mode = j.at("mode").get<int>();
  b.base.k = j.at("base").at("k").get<double>();
  b.base.h = j.at("base").at("h").get<double>();
  b.base.g = j.at("base").at("g").get<double>();
  b.base.mu = j.at("base").at("mu").get<double>();
  b.truncated = j.value("truncated", false);
  b.warning = j.value("warning", std::string{});
  for (const json& pj : j.at("points")) b.points.push_back(point_from_json_obj(pj));
  return b;
}

std::string surface_csv(const WaveState& state, int count) {
  std::string out = "X,Y\n";
  char line[96];
  for (const auto& [x, y] : surface_points(state, count)) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", x, y);
    out += line;
  }
  return out;
}

std::string to_json(const StabilityReport& report) {
  json j;
  j["eigenvalues"] = report.eigenvalues;
  j["n_negative"] = report.n_negative;
  j["n_zero"] = report.n_zero;
  j["lambda_min"] = report.lambda_min;
  if (report.prediction) {
    j["prediction"] = *report.prediction;
  } else {
    j["prediction"] = nullptr;
  }
  j["classification"] = to_string(report.classification);
  j["zero_tol"] = report.zero_tol;
  return j.dump();
}

}  // namespace wavestab
