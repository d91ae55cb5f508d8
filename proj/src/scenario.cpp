#include "seqbell/scenario.hpp"

#include <fstream>

namespace seqbell {

using nlohmann::json;

namespace {

bool is_canonical(const json& j) { return j.is_string() && j.get<std::string>() == "canonical"; }

std::array<ComplexMatrix, 3> triple_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw DomainError(std::string(what) + ": expected an array of three matrices");
  }
  return {matrix_from_json(j[0]), matrix_from_json(j[1]), matrix_from_json(j[2])};
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix_to_json: matrix must be square");
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return {{"dim", m.rows()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw DomainError("matrix: expected {\"dim\": d, \"entries\": [...]}");
  }
  const int d = j.at("dim").get<int>();
  const json& entries = j.at("entries");
  if (d <= 0) throw DimensionError("matrix: dim must be positive");
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(d) * d) {
    throw DimensionError("matrix: entries must hold dim*dim [re, im] pairs");
  }
  ComplexMatrix m(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const json& e = entries[static_cast<std::size_t>(r) * d + c];
      if (!e.is_array() || e.size() != 2) throw DomainError("matrix: entry must be [re, im]");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

ChainConfig parse_scenario(const json& j) {
  try {
    int da = 2;
    int db = 2;
    if (j.contains("dims")) {
      const auto dims = j.at("dims").get<std::vector<int>>();
      if (dims.size() != 2) throw DimensionError("scenario: dims must be [dA, dB]");
      da = dims[0];
      db = dims[1];
    }
    const bool canonical_dims = da == 2 && db == 2;

    auto require_canonical_dims = [&](const char* what) {
      if (!canonical_dims) {
        throw DimensionError(std::string("scenario: canonical ") + what + " needs dims [2, 2]");
      }
    };

    const json state_j = j.value("state", json("canonical"));
    ComplexMatrix rho;
    if (is_canonical(state_j)) {
      require_canonical_dims("state");
      rho = canonical_state().matrix();
    } else {
      rho = matrix_from_json(state_j);
    }
    if (rho.rows() != da * db) throw DimensionError("scenario: state dim must equal dA*dB");

    const json alice_j = j.value("alice", json("canonical"));
    ObservableTriple alice = is_canonical(alice_j)
                                 ? (require_canonical_dims("alice"), canonical_alice())
                                 : ObservableTriple::from_matrices(triple_from_json(alice_j, "alice"));

    if (!j.contains("bobs") || !j.at("bobs").is_array()) {
      throw DomainError("scenario: \"bobs\" must be an array");
    }
    std::vector<SequentialBob> bobs;
    for (const json& b : j.at("bobs")) {
      const json triple_j = b.value("triple", json("canonical"));
      ObservableTriple triple =
          is_canonical(triple_j) ? (require_canonical_dims("triple"), canonical_bob())
                                 : ObservableTriple::from_matrices(triple_from_json(triple_j, "bob"));
      if (!b.contains("eta")) throw DomainError("scenario: every Bob needs an eta");
      const double eta = b.at("eta").get<double>();
      if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("scenario: eta must lie in (0, 1]");
      std::array<double, 3> weights = kUniformWeights;
      if (b.contains("weights")) {
        const auto w = b.at("weights").get<std::vector<double>>();
        if (w.size() != 3) throw DomainError("scenario: weights must have three entries");
        std::copy(w.begin(), w.end(), weights.begin());
      }
      bobs.push_back(SequentialBob{std::move(triple), UnsharpSetting(eta), weights});
    }

    ChainConfig cfg{QuantumState(std::move(rho), da, db), std::move(alice), std::move(bobs)};
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw DomainError(std::string("scenario: ") + e.what());
  }
}

ChainConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open scenario file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DomainError("scenario " + path + ": " + e.what());
  }
  return parse_scenario(j);
}

json to_json(const ChainResult& r) {
  json bobs = json::array();
  for (std::size_t k = 0; k < r.bell_values.size(); ++k) {
    json eff = json::array();
    for (const auto& e : r.effective_observables[k]) {
      eff.push_back({{"matrix", matrix_to_json(e.matrix)}, {"omega", e.omega}});
    }
    bobs.push_back({{"index", k + 1},
                    {"bell_value", r.bell_values[k]},
                    {"violates_noncontextual_bound", r.bell_values[k] > 4.0},
                    {"state", matrix_to_json(r.states[k].matrix())},
                    {"effective_observables", std::move(eff)}});
  }
  return {{"bell_values", r.bell_values}, {"length_flagged", r.length_flagged}, {"bobs", std::move(bobs)}};
}

}  // namespace seqbell
