// report_io.hpp — JSON serialisation of specs, configs, reports and observables

#pragma once

#include <string>

#include "json.hpp"

#include "dicke/model.hpp"
#include "dicke/observables.hpp"
#include "dicke/oracle.hpp"
#include "dicke/photon_frame.hpp"
#include "dicke/scf.hpp"

namespace dicke {

using Json = nlohmann::ordered_json;

void to_json(Json& j, const Couplings& c);
void to_json(Json& j, const ModelSpec& s);
void to_json(Json& j, const PhotonFrame& f);
void to_json(Json& j, const ScfConfig& c);
void to_json(Json& j, const SolverConfig& c);
void to_json(Json& j, const ScfIterate& it);
/// Everything except the spin state.
void to_json(Json& j, const ScfReport& r);
void to_json(Json& j, const ObservableSet& o);
void to_json(Json& j, const ScalingFit& f);
void to_json(Json& j, const DecayFit& f);
void to_json(Json& j, const PhaseLabel& p);
void to_json(Json& j, const OracleResult& r);  // without the eigenvector
void to_json(Json& j, const OracleObservables& o);

/// Write pretty-printed JSON, creating parent directories.
void write_json(const std::string& path, const Json& j);

/// Version string recorded in output metadata.
std::string version_string();

}  // namespace dicke
