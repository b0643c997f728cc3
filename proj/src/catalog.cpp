#include "ctpower/catalog.hpp"

#include <stdexcept>

namespace ctpower {

namespace {

// Bell measurements pairing input qubit k with Alice's k-th qubit.
std::vector<MeasurementStep> sender_bell_pairs(const ProtocolSpec& spec, int count) {
  std::vector<MeasurementStep> steps;
  int offset = spec.input_qubits;
  for (int k = 0; k < count; ++k)
    steps.push_back({MeasurementBasis::bell(),
                     {k, offset + spec.parties.alice[std::size_t(k)]}});
  return steps;
}

std::vector<MeasurementStep> x_each(const ProtocolSpec& spec, const std::vector<int>& qubits) {
  std::vector<MeasurementStep> steps;
  for (int q : qubits)
    steps.push_back({MeasurementBasis::x_basis(), {spec.input_qubits + q}});
  return steps;
}

ProtocolSpec from_channel(const SchemeConfig& config, Channel channel) {
  ProtocolSpec spec;
  spec.scheme_id = config.id;
  spec.channel = std::move(channel.state);
  spec.parties = std::move(channel.parties);
  spec.input_qubits = config.n;
  return spec;
}

}  // namespace

ProtocolSpec make_scheme(const SchemeConfig& config) {
  if (config.id == "ghz") {
    SchemeConfig c = config;
    c.n = 1;
    c.m = 1;
    ProtocolSpec spec = from_channel(c, nghz_channel(1, 1));
    spec.sender_plan = sender_bell_pairs(spec, 1);
    spec.controller_plans = {x_each(spec, spec.parties.controllers[0])};
    spec.symmetric_controllers = true;
    spec.validate();
    return spec;
  }
  if (config.id == "2ghz") {
    SchemeConfig c = config;
    c.n = 2;
    c.m = 1;
    ProtocolSpec spec = from_channel(c, nghz_channel(2, 1));
    spec.sender_plan = sender_bell_pairs(spec, 2);
    // the controller's two bits of outcome come from qubit-wise X measurements;
    // an entangled controller measurement would need non-Pauli corrections
    spec.controller_plans = {x_each(spec, spec.parties.controllers[0])};
    spec.symmetric_controllers = true;
    spec.validate();
    return spec;
  }
  if (config.id == "nghz") {
    ProtocolSpec spec = from_channel(config, nghz_channel(config.n, config.m));
    spec.sender_plan = sender_bell_pairs(spec, config.n);
    for (const auto& ctrl : spec.parties.controllers)
      spec.controller_plans.push_back(x_each(spec, ctrl));
    spec.symmetric_controllers = true;
    spec.validate();
    return spec;
  }
  if (config.id == "yang") {
    ProtocolSpec spec = from_channel(config, yang_channel(config.n, config.m, config.variant));
    spec.sender_plan = sender_bell_pairs(spec, config.n);
    // Alice's GHZ qubit is the last entry of her block
    spec.sender_plan.push_back(
        {MeasurementBasis::x_basis(),
         {spec.input_qubits + spec.parties.alice[std::size_t(config.n)]}});
    for (const auto& ctrl : spec.parties.controllers)
      spec.controller_plans.push_back(x_each(spec, ctrl));
    spec.symmetric_controllers = true;
    spec.validate();
    return spec;
  }
  if (config.id == "man") {
    ProtocolSpec spec = from_channel(config, man_channel(config.n, config.m));
    spec.sender_plan = sender_bell_pairs(spec, config.n);
    for (const auto& ctrl : spec.parties.controllers)
      spec.controller_plans.push_back(x_each(spec, ctrl));
    spec.symmetric_controllers = true;
    spec.validate();
    return spec;
  }
  if (config.id == "partial") {
    ProtocolSpec spec = from_channel(config, partial_control_channel(config.n));
    spec.sender_plan = sender_bell_pairs(spec, config.n);
    spec.controller_plans = {x_each(spec, spec.parties.controllers[0])};
    spec.symmetric_controllers = true;
    spec.validate();
    return spec;
  }
  if (config.id == "pe4") {
    SchemeConfig c = config;
    c.n = 1;
    ProtocolSpec spec = from_channel(c, pe4_channel(config.pe4));
    spec.frame_channel =
        pe4_channel(Pe4Params::from_squares(0.25, 0.25, 0.25, 0.25)).state;
    spec.sender_plan = sender_bell_pairs(spec, 1);
    std::vector<MeasurementStep> ctrl;
    for (int q : spec.parties.controllers[0])
      ctrl.push_back({MeasurementBasis::computational(), {spec.input_qubits + q}});
    spec.controller_plans = {ctrl};
    spec.symmetric_controllers = true;
    spec.validate();
    return spec;
  }
  throw std::invalid_argument("unknown scheme id: " + config.id);
}

std::vector<SchemeConfig> acceptance_catalog() {
  std::vector<SchemeConfig> out;
  out.push_back({"ghz", 1, 1, 1, {}});
  out.push_back({"2ghz", 2, 1, 1, {}});
  for (int n = 1; n <= 3; ++n) out.push_back({"nghz", n, 1, 1, {}});
  for (int n = 1; n <= 3; ++n)
    for (int variant = 1; variant <= 2; ++variant)
      out.push_back({"yang", n, 1, variant, {}});
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= n; ++m) out.push_back({"man", n, m, 1, {}});
  const double grids[5][4] = {{1.0, 0.0, 0.0, 0.0},
                              {0.25, 0.25, 0.25, 0.25},
                              {0.4, 0.2, 0.2, 0.2},
                              {0.8, 0.1, 0.05, 0.05},
                              {0.5, 0.5, 0.0, 0.0}};
  for (const auto& g : grids)
    out.push_back({"pe4", 1, 1, 1, Pe4Params::from_squares(g[0], g[1], g[2], g[3])});
  return out;
}

}  // namespace ctpower
