#include "ppsnd/geo.hpp"

#include <cmath>

namespace ppsnd {

uint64_t normalize_deg(double deg, bool is_lat, int64_t factor) {
    if (factor <= 0) throw ConfigError("normalize_deg: factor must be positive");
    double limit = is_lat ? 90.0 : 180.0;
    if (!(deg >= -limit && deg <= limit)) throw DomainError("normalize_deg: degree out of range");
    return uint64_t(llround((deg + limit) * double(factor)));
}

NormalizedCoordinate normalize_coord(const GeoCoordinate& coord, int64_t factor) {
    return {normalize_deg(coord.lat, true, factor), normalize_deg(coord.lng, false, factor), factor};
}

double denormalize_diff(int64_t units, int64_t factor) {
    if (factor <= 0) throw ConfigError("denormalize_diff: factor must be positive");
    if (units > 360 * factor || units < -360 * factor)
        throw DomainError("denormalize_diff: units out of range");
    return double(units) / double(factor);
}

EncryptedCoordinate enc_coord(const PaillierPublicKey& ppk, const GeoCoordinate& coord, int64_t factor,
                              DeterministicRng& rng) {
    NormalizedCoordinate norm = normalize_coord(coord, factor);
    return {ppk.encrypt(mpz_class(norm.lat_units), rng), ppk.encrypt(mpz_class(norm.lng_units), rng)};
}

EncryptedDiff hec_diff(const PaillierPublicKey& ppk, const EncryptedCoordinate& input,
                       const EncryptedCoordinate& participant) {
    return {ppk.he_sub(input.X, participant.X), ppk.he_sub(input.Y, participant.Y)};
}

double euclid_distance_deg(double dlat_deg, double dlng_deg, double ref_lat_deg) {
    double dy = dlat_deg * kMetersPerDegree;
    double dx = dlng_deg * kMetersPerDegree * std::cos(ref_lat_deg * M_PI / 180.0);
    return std::hypot(dx, dy);
}

double euclid_distance_m(int64_t dlat_units, int64_t dlng_units, double ref_lat_deg, int64_t factor) {
    return euclid_distance_deg(denormalize_diff(dlat_units, factor), denormalize_diff(dlng_units, factor),
                               ref_lat_deg);
}

double d_tof(int64_t t1_ps, int64_t t2_ps, int64_t delta_proc_ps) {
    if (t2_ps <= t1_ps) throw DomainError("d_tof: t2 must follow t1");
    if (delta_proc_ps < 0 || delta_proc_ps > t2_ps - t1_ps)
        throw DomainError("d_tof: processing time exceeds round trip");
    int64_t delta_ps = (t2_ps - t1_ps) - delta_proc_ps;
    return double(delta_ps) * 1e-12 * kSpeedOfLight / 2.0;
}

}  // namespace ppsnd
