#pragma once

#include <array>
#include <optional>
#include <string>

#include "rtm/core/config.hpp"

namespace rtm {

enum class TissueType {
    Skin = 0,
    AdiposeTissue,
    MammaryGland,
    BreastLobule,
    Duct,
    ConnectiveTissue,
    Muscle,
    BloodVessel,
    Tumor,
    Nipple,
};

inline constexpr int kTissueCount = 10;

const char* tissue_name(TissueType t);
std::optional<TissueType> tissue_from_name(const std::string& name);

inline int tissue_tag(TissueType t) { return static_cast<int>(t); }

struct TissueProperties {
    double density = 0.0;        // kg/m^3
    double specific_heat = 0.0;  // J/(kg*K)
    double conductivity = 0.0;   // W/(m*K), thermal
    double q_met = 0.0;          // W/m^3, metabolic source
    double q_can = 0.0;          // W/m^3, tumor source (Tumor only)
    double q_rad = 0.0;          // W/m^3, radiative sink, <= 0
    double sigma = 0.0;          // S/m, electrical conductivity
    double eps_r = 1.0;          // relative permittivity
    double mu_r = 1.0;           // relative permeability

    void validate(TissueType t) const;  // throws InvalidSpec
};

// Per-tissue property map keyed by the TissueType enum value.
using TissuePropertyMap = std::array<TissueProperties, kTissueCount>;

// Property table parsed from the versioned config file. Dielectric values are
// stored at the table's reference frequency with a linear per-GHz slope.
class TissueTable {
public:
    static const TissueTable& builtin();  // data/tissue_properties.cfg, embedded at build
    static TissueTable from_config(const Config& cfg);
    static TissueTable from_file(const std::string& path);

    TissueProperties at(TissueType t, double frequency_hz) const;
    TissuePropertyMap all(double frequency_hz) const;

    int schema_version() const { return schema_version_; }

private:
    struct Entry {
        TissueProperties base;
        double sigma_slope_per_ghz = 0.0;
        double eps_slope_per_ghz = 0.0;
    };
    std::array<Entry, kTissueCount> entries_{};
    double reference_frequency_hz_ = 1.5e9;
    int schema_version_ = 0;
};

TissueProperties default_tissue_properties(TissueType t, double frequency_hz);

}  // namespace rtm
