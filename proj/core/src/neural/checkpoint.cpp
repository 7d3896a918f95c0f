#include "navrl/neural/checkpoint.hpp"

#include <nlohmann/json.hpp>

#include "navrl/errors.hpp"

namespace navrl::neural {

using nlohmann::json;

CheckpointVersionError::CheckpointVersionError(int expected, int actual)
    : std::runtime_error("checkpoint format_version " + std::to_string(actual) +
                         " is not supported (expected " + std::to_string(expected) + ")"),
      expected_(expected),
      actual_(actual) {}

namespace {

json array_to_json(const NdArray& a) {
  if (a.rank() == 1) return json(std::vector<double>(a.data().begin(), a.data().end()));
  if (a.rank() != 2) throw DimensionError("checkpoint: only rank 1 and 2 arrays are stored");
  json rows = json::array();
  for (std::size_t i = 0; i < a.dim(0); ++i) {
    const auto row = a.data().subspan(i * a.dim(1), a.dim(1));
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return rows;
}

NdArray array_from_json(const json& j, const std::vector<std::size_t>& expected,
                        const std::string& name) {
  if (!j.is_array()) throw std::runtime_error("checkpoint: " + name + " is not an array");
  std::vector<double> data;
  std::vector<std::size_t> shape;
  if (!j.empty() && j.front().is_array()) {
    const std::size_t cols = j.front().size();
    shape = {j.size(), cols};
    data.reserve(j.size() * cols);
    for (const auto& row : j) {
      if (!row.is_array() || row.size() != cols)
        throw DimensionError("checkpoint: ragged rows in " + name);
      for (const auto& v : row) data.push_back(v.get<double>());
    }
  } else {
    shape = {j.size()};
    for (const auto& v : j) data.push_back(v.get<double>());
  }
  if (shape != expected)
    throw DimensionError("checkpoint: " + name + " has shape " + shape_string(shape) +
                         ", expected " + shape_string(expected));
  return NdArray(std::move(shape), std::move(data));
}

json config_to_json(const NetworkConfig& c) {
  return json{{"topology", std::string(to_string(c.topology))},
              {"obs_dim", c.obs_dim},
              {"seq_len", c.seq_len},
              {"tdl_units", c.tdl_units},
              {"gru_units", c.gru_units},
              {"fc1_units", c.fc1_units},
              {"n_actions", c.n_actions},
              {"ff_units", c.ff_units},
              {"init_scheme", std::string(to_string(c.init_scheme))},
              {"init_seed", c.init_seed}};
}

NetworkConfig config_from_json(const json& j) {
  NetworkConfig c;
  const auto topology = j.at("topology").get<std::string>();
  if (topology == "recurrent") c.topology = Topology::Recurrent;
  else if (topology == "feedforward") c.topology = Topology::FeedForward;
  else throw std::runtime_error("checkpoint: unknown topology '" + topology + "'");
  c.obs_dim = j.at("obs_dim").get<std::size_t>();
  c.seq_len = j.at("seq_len").get<std::size_t>();
  c.tdl_units = j.at("tdl_units").get<std::size_t>();
  c.gru_units = j.at("gru_units").get<std::size_t>();
  c.fc1_units = j.at("fc1_units").get<std::size_t>();
  c.n_actions = j.at("n_actions").get<std::size_t>();
  c.ff_units = j.at("ff_units").get<std::size_t>();
  const auto init = j.at("init_scheme").get<std::string>();
  if (init == "glorot_uniform") c.init_scheme = InitScheme::GlorotUniform;
  else if (init == "zeros") c.init_scheme = InitScheme::Zeros;
  else throw std::runtime_error("checkpoint: unknown init_scheme '" + init + "'");
  c.init_seed = j.at("init_seed").get<std::uint64_t>();
  c.validate();
  return c;
}

json named_arrays(const Parameters& p) {
  json out = json::object();
  p.for_each([&](std::string_view name, const NdArray& a) { out[std::string(name)] = array_to_json(a); });
  return out;
}

json moments_to_json(const Parameters& like, const std::vector<NdArray>& moments) {
  json out = json::object();
  std::size_t i = 0;
  like.for_each([&](std::string_view name, const NdArray&) {
    out[std::string(name)] = array_to_json(moments.at(i++));
  });
  return out;
}

std::vector<NdArray> moments_from_json(const json& j, const Parameters& like) {
  std::vector<NdArray> out;
  like.for_each([&](std::string_view name, const NdArray& a) {
    out.push_back(array_from_json(j.at(std::string(name)), a.shape(), std::string(name)));
  });
  return out;
}

}  // namespace

std::string save_checkpoint(const Checkpoint& ckpt) {
  json j;
  j["format_version"] = kCheckpointFormatVersion;
  j["network_config"] = config_to_json(ckpt.network_config);
  j["parameters"] = named_arrays(ckpt.parameters);
  if (ckpt.optimizer) {
    const auto& o = *ckpt.optimizer;
    json oj{{"kind", std::string(to_string(o.config().kind))},
            {"learning_rate", o.config().learning_rate},
            {"beta1", o.config().beta1},
            {"beta2", o.config().beta2},
            {"epsilon", o.config().epsilon},
            {"step_count", o.step_count()}};
    if (o.config().kind == OptimizerKind::Adam) {
      oj["m"] = moments_to_json(ckpt.parameters, o.first_moments());
      oj["v"] = moments_to_json(ckpt.parameters, o.second_moments());
    }
    j["optimizer"] = std::move(oj);
  } else {
    j["optimizer"] = nullptr;
  }
  j["rng_state"] = ckpt.rng_state;
  j["metadata"] = ckpt.metadata;
  return j.dump() + "\n";
}

Checkpoint load_checkpoint(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("checkpoint: malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("format_version"))
    throw std::runtime_error("checkpoint: missing format_version");
  const int version = j.at("format_version").get<int>();
  if (version != kCheckpointFormatVersion)
    throw CheckpointVersionError(kCheckpointFormatVersion, version);

  try {
    Checkpoint ckpt;
    ckpt.network_config = config_from_json(j.at("network_config"));
    const Parameters shapes = zero_parameters(ckpt.network_config);
    const auto& pj = j.at("parameters");
    std::size_t stored = 0;
    ckpt.parameters = shapes;
    ckpt.parameters.for_each([&](std::string_view name, NdArray& a) {
      a = array_from_json(pj.at(std::string(name)), a.shape(), std::string(name));
      ++stored;
    });
    if (pj.size() != stored) throw std::runtime_error("checkpoint: unexpected parameter arrays");

    const auto& oj = j.at("optimizer");
    if (!oj.is_null()) {
      OptimizerConfig oc;
      const auto kind = oj.at("kind").get<std::string>();
      if (kind == "adam") oc.kind = OptimizerKind::Adam;
      else if (kind == "sgd") oc.kind = OptimizerKind::Sgd;
      else throw std::runtime_error("checkpoint: unknown optimizer '" + kind + "'");
      oc.learning_rate = oj.at("learning_rate").get<double>();
      oc.beta1 = oj.at("beta1").get<double>();
      oc.beta2 = oj.at("beta2").get<double>();
      oc.epsilon = oj.at("epsilon").get<double>();
      Optimizer opt(oc, ckpt.parameters);
      std::vector<NdArray> m, v;
      if (oc.kind == OptimizerKind::Adam) {
        m = moments_from_json(oj.at("m"), ckpt.parameters);
        v = moments_from_json(oj.at("v"), ckpt.parameters);
      }
      opt.restore(oj.at("step_count").get<std::uint64_t>(), std::move(m), std::move(v));
      ckpt.optimizer = std::move(opt);
    }
    ckpt.rng_state = j.at("rng_state").get<std::map<std::string, std::string>>();
    ckpt.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    return ckpt;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("checkpoint: malformed document: ") + e.what());
  }
}

QNetwork network_from_checkpoint(const Checkpoint& ckpt) {
  return QNetwork(ckpt.network_config, ckpt.parameters);
}

}  // namespace navrl::neural
