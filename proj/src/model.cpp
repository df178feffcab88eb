#include "dicke/model.hpp"

#include <cmath>
#include <sstream>

namespace dicke {

std::string to_string(Boundary b) { return b == Boundary::open ? "open" : "periodic"; }

std::string to_string(PresetKind k) {
    switch (k) {
        case PresetKind::dicke: return "dicke";
        case PresetKind::dicke_ising: return "dicke-ising";
        case PresetKind::dicke_xxz: return "dicke-xxz";
    }
    return "dicke";
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "open") return Boundary::open;
    if (s == "periodic") return Boundary::periodic;
    throw ConfigError("unknown boundary '" + s + "' (expected open|periodic)");
}

PresetKind preset_from_string(const std::string& s) {
    if (s == "dicke") return PresetKind::dicke;
    if (s == "dicke-ising" || s == "ising") return PresetKind::dicke_ising;
    if (s == "dicke-xxz" || s == "xxz") return PresetKind::dicke_xxz;
    throw ConfigError("unknown preset '" + s + "' (expected dicke|dicke-ising|dicke-xxz)");
}

void ModelSpec::validate() const {
    if (N < 1) throw ConfigError("N must be >= 1");
    if (!(omega > 0.0)) throw ConfigError("omega must be > 0");
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
    if (!(g >= 0.0)) throw ConfigError("g must be >= 0 (the sign of g is a gauge)");
    for (double v : {omega, epsilon, g, J.x, J.y, J.z, staggered_field})
        if (!std::isfinite(v)) throw ConfigError("model parameters must be finite");
}

std::vector<std::pair<int, int>> ModelSpec::bonds() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i + 1 < N; ++i) out.emplace_back(i, i + 1);
    if (boundary == Boundary::periodic && N >= 3) out.emplace_back(N - 1, 0);
    return out;
}

ModelSpec ModelPreset::to_spec() const {
    ModelSpec s;
    s.N = N;
    s.omega = omega;
    s.epsilon = epsilon;
    s.g = g;
    s.boundary = boundary;
    switch (kind) {
        case PresetKind::dicke: s.J = {0.0, 0.0, 0.0}; break;
        case PresetKind::dicke_ising: s.J = {0.0, 0.0, 4.0 * J}; break;
        case PresetKind::dicke_xxz: s.J = {1.0, 1.0, Jz}; break;
    }
    s.validate();
    return s;
}

double effective_single_coupling(const ModelSpec& spec) {
    return 2.0 * spec.g / std::sqrt(0.5 * spec.N);
}

double dicke_critical_coupling(const ModelSpec& spec) {
    return 0.5 * std::sqrt(spec.omega * spec.epsilon);
}

double ising_critical_exchange(const ModelSpec& spec) { return -0.25 * spec.epsilon; }

double ising_boundary(double J, const ModelSpec& spec) {
    const double Jc = ising_critical_exchange(spec);
    if (!(J > Jc)) {
        std::ostringstream os;
        os << "ising_boundary: J = " << J << " is not above J_c = " << Jc
           << "; the transition there is first order";
        throw std::domain_error(os.str());
    }
    return dicke_critical_coupling(spec) * std::sqrt(1.0 - J / Jc);
}

int bulk_site(int N) { return N / 4 - 1 > 0 ? N / 4 - 1 : 0; }

namespace {

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + v + "' as a number");
    }
}

}  // namespace

ModelSpec model_from_keys(const std::map<std::string, std::string>& kv) {
    static const char* known[] = {"preset", "N", "g", "J", "Jx", "Jy", "Jz",
                                  "omega", "epsilon", "boundary", "staggered_field"};
    for (const auto& [k, v] : kv) {
        bool ok = false;
        for (const char* name : known) ok = ok || k == name;
        if (!ok) throw ConfigError("unknown model key '" + k + "'");
    }
    ModelPreset p;
    if (auto it = kv.find("preset"); it != kv.end()) p.kind = preset_from_string(it->second);
    if (auto it = kv.find("N"); it != kv.end()) {
        double n = to_double("N", it->second);
        if (n != std::floor(n)) throw ConfigError("N must be an integer");
        p.N = static_cast<int>(n);
    }
    auto num = [&](const char* key, double& dst) {
        if (auto it = kv.find(key); it != kv.end()) dst = to_double(key, it->second);
    };
    num("g", p.g);
    num("J", p.J);
    num("omega", p.omega);
    num("epsilon", p.epsilon);
    if (p.kind == PresetKind::dicke_xxz) num("Jz", p.Jz);
    if (auto it = kv.find("boundary"); it != kv.end()) p.boundary = boundary_from_string(it->second);

    ModelSpec s = p.to_spec();
    num("Jx", s.J.x);
    num("Jy", s.J.y);
    if (p.kind != PresetKind::dicke_xxz) num("Jz", s.J.z);
    num("staggered_field", s.staggered_field);
    s.validate();
    return s;
}

}  // namespace dicke
