#include "rtm/phantom/tissue.hpp"

#include <fstream>
#include <sstream>

#include "rtm/core/error.hpp"
#include "rtm/phantom/tissue_defaults.hpp"

namespace rtm {

namespace {

// Section names in the property file, indexed by TissueType.
constexpr const char* kSectionNames[kTissueCount] = {
    "skin", "adipose", "gland", "lobule", "duct",
    "connective", "muscle", "vessel", "tumor", "nipple",
};

constexpr const char* kDisplayNames[kTissueCount] = {
    "Skin", "AdiposeTissue", "MammaryGland", "BreastLobule", "Duct",
    "ConnectiveTissue", "Muscle", "BloodVessel", "Tumor", "Nipple",
};

}  // namespace

const char* tissue_name(TissueType t) { return kDisplayNames[static_cast<int>(t)]; }

std::optional<TissueType> tissue_from_name(const std::string& name) {
    for (int i = 0; i < kTissueCount; ++i) {
        if (name == kDisplayNames[i] || name == kSectionNames[i])
            return static_cast<TissueType>(i);
    }
    return std::nullopt;
}

void TissueProperties::validate(TissueType t) const {
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCategory::InvalidSpec,
                    std::string(tissue_name(t)) + " properties: " + what);
    };
    if (!(density > 0.0)) fail("density must be > 0");
    if (!(specific_heat > 0.0)) fail("specific_heat must be > 0");
    if (!(conductivity > 0.0)) fail("conductivity must be > 0");
    if (!(sigma >= 0.0)) fail("sigma must be >= 0");
    if (!(eps_r >= 1.0)) fail("eps_r must be >= 1");
    if (!(mu_r > 0.0)) fail("mu_r must be > 0");
    if (q_rad > 0.0) fail("q_rad must be <= 0");
    if (q_met < 0.0) fail("q_met must be >= 0");
    if (q_can < 0.0) fail("q_can must be >= 0");
    if (q_can > 0.0 && t != TissueType::Tumor) fail("q_can must be 0 for non-tumor tissue");
}

const TissueTable& TissueTable::builtin() {
    static const TissueTable table = from_config(Config::parse(kDefaultTissueProperties));
    return table;
}

TissueTable TissueTable::from_config(const Config& cfg) {
    TissueTable table;
    table.schema_version_ = cfg.get_int("schema_version", 0);
    if (table.schema_version_ != 1)
        throw Error(ErrorCategory::SchemaMismatch,
                    "tissue property table: expected schema_version 1, got " +
                        std::to_string(table.schema_version_));
    table.reference_frequency_hz_ = cfg.get_double("reference_frequency_hz", 1.5e9);
    for (int i = 0; i < kTissueCount; ++i) {
        std::string s(kSectionNames[i]);
        if (!cfg.has(s + ".density"))
            throw Error(ErrorCategory::SchemaMismatch,
                        "tissue property table: missing section [" + s + "]");
        Entry e;
        e.base.density = cfg.require_double(s + ".density");
        e.base.specific_heat = cfg.require_double(s + ".specific_heat");
        e.base.conductivity = cfg.require_double(s + ".conductivity");
        e.base.q_met = cfg.get_double(s + ".q_met", 0.0);
        e.base.q_can = cfg.get_double(s + ".q_can", 0.0);
        e.base.q_rad = cfg.get_double(s + ".q_rad", 0.0);
        e.base.sigma = cfg.require_double(s + ".sigma");
        e.base.eps_r = cfg.require_double(s + ".eps_r");
        e.base.mu_r = cfg.get_double(s + ".mu_r", 1.0);
        e.sigma_slope_per_ghz = cfg.get_double(s + ".sigma_slope_per_ghz", 0.0);
        e.eps_slope_per_ghz = cfg.get_double(s + ".eps_slope_per_ghz", 0.0);
        e.base.validate(static_cast<TissueType>(i));
        table.entries_[static_cast<std::size_t>(i)] = e;
    }
    return table;
}

TissueTable TissueTable::from_file(const std::string& path) {
    return from_config(Config::load(path));
}

TissueProperties TissueTable::at(TissueType t, double frequency_hz) const {
    if (!(frequency_hz > 0.0))
        throw Error(ErrorCategory::InvalidSpec, "frequency must be > 0");
    const Entry& e = entries_[static_cast<std::size_t>(t)];
    TissueProperties p = e.base;
    double dghz = (frequency_hz - reference_frequency_hz_) * 1e-9;
    p.sigma = std::max(0.0, p.sigma + e.sigma_slope_per_ghz * dghz);
    p.eps_r = std::max(1.0, p.eps_r + e.eps_slope_per_ghz * dghz);
    p.validate(t);
    return p;
}

TissuePropertyMap TissueTable::all(double frequency_hz) const {
    TissuePropertyMap map;
    for (int i = 0; i < kTissueCount; ++i)
        map[static_cast<std::size_t>(i)] = at(static_cast<TissueType>(i), frequency_hz);
    return map;
}

TissueProperties default_tissue_properties(TissueType t, double frequency_hz) {
    return TissueTable::builtin().at(t, frequency_hz);
}

}  // namespace rtm
