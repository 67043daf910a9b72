#pragma once

#include <cstdint>

#include "ppsnd/paillier.hpp"

namespace ppsnd {

inline constexpr double kSpeedOfLight = 3.0e8;       // m/s
inline constexpr double kMetersPerDegree = 111320.0; // equirectangular scale
inline constexpr int64_t kDefaultNormalizeFactor = 1000000;

struct GeoCoordinate {
    double lat = 0;  // degrees in [-90, 90]
    double lng = 0;  // degrees in [-180, 180]
};

struct NormalizedCoordinate {
    uint64_t lat_units = 0;
    uint64_t lng_units = 0;
    int64_t factor = kDefaultNormalizeFactor;
};

struct EncryptedCoordinate {
    PaillierCiphertext X;  // encrypted lat units
    PaillierCiphertext Y;  // encrypted lng units
};

// Shift-and-scale to non-negative integers: round((deg + 90) * factor) for
// latitude, round((deg + 180) * factor) for longitude.
uint64_t normalize_deg(double deg, bool is_lat, int64_t factor);

NormalizedCoordinate normalize_coord(const GeoCoordinate& coord, int64_t factor);

// Unit difference back to real degrees; the +90/+180 offsets cancel.
double denormalize_diff(int64_t units, int64_t factor);

EncryptedCoordinate enc_coord(const PaillierPublicKey& ppk, const GeoCoordinate& coord, int64_t factor,
                              DeterministicRng& rng);

struct EncryptedDiff {
    PaillierCiphertext diff_lat;
    PaillierCiphertext diff_lng;
};

// Input (initiator) minus participant (responder), both axes.
EncryptedDiff hec_diff(const PaillierPublicKey& ppk, const EncryptedCoordinate& input,
                       const EncryptedCoordinate& participant);

// Equirectangular projection at the caller's own latitude.
double euclid_distance_m(int64_t dlat_units, int64_t dlng_units, double ref_lat_deg, int64_t factor);
double euclid_distance_deg(double dlat_deg, double dlng_deg, double ref_lat_deg);

// Corrected round trip to meters: d = c * ((t2 - t1) - delta_proc) / 2.
double d_tof(int64_t t1_ps, int64_t t2_ps, int64_t delta_proc_ps);

}  // namespace ppsnd
