#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "paircat/channels.hpp"
#include "paircat/dynamics.hpp"
#include "paircat/gates.hpp"
#include "paircat/mmqec.hpp"
#include "paircat/quasiprob.hpp"
#include "paircat/recovery.hpp"
#include "paircat/reservoir.hpp"

namespace paircat::io {

using json = nlohmann::json;

// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string num(double v);

class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  void add(std::vector<std::string> row);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

Csv dephasing_csv(const std::vector<RateRow>& rows);
Csv lossprob_csv(const std::vector<LossProbRow>& rows);
Csv fidelity_csv(const std::vector<FidelityRow>& rows);
Csv grid_csv(const DistributionGrid& g);

struct JunctionRow {
  int pi_or_delta;
  double beta;
  double c_minus;
};
Csv junction_csv(const std::vector<JunctionRow>& rows);

json cplx_json(cplx z);  // [re, im]
json to_json(const KLReport& r);
json to_json(const CertReport& r);
json to_json(const DecodedError& d);
json to_json(const RegimeFlags& f);
json to_json(const EffectiveParams& e);
json to_json(const ValidationReport& r);
json to_json(const RateFit& r);
json to_json(const ReadoutResult& r);
json to_json(const AutonomousTrace& t);
json grid_header(const DistributionGrid& g);

// Tool name, library version, command, resolved config and tolerances.
json manifest(const std::string& command, const json& config, const json& tolerances);
void write_json(const std::filesystem::path& path, const json& j);

}  // namespace paircat::io
