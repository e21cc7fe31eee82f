// Parameter sweeps over (order, density scale) cells with reproducible
// per-sample keys, CSV emission with a fixed column set, and the
// log-parameter weight-bound report.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "thincirc/construction.hpp"
#include "thincirc/freeness.hpp"
#include "thincirc/parallel.hpp"
#include "thincirc/rho.hpp"
#include "thincirc/rng.hpp"
#include "thincirc/util.hpp"

namespace thincirc {

struct SweepSpec {
    std::vector<std::uint64_t> n_values;
    std::uint64_t k = 2;
    std::uint64_t l = 2;
    std::vector<double> scales;
    std::uint64_t samples = 100;
    std::uint64_t seed = 0;
    FreenessOptions search;
};

inline SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("sweep spec: expected an object");
    SweepSpec spec;
    if (!j.contains("n_values") || !j["n_values"].is_array() || j["n_values"].empty())
        throw std::invalid_argument("sweep spec: \"n_values\" must be a non-empty array");
    for (const auto& v : j["n_values"]) spec.n_values.push_back(v.get<std::uint64_t>());
    if (!j.contains("scales") || !j["scales"].is_array() || j["scales"].empty())
        throw std::invalid_argument("sweep spec: \"scales\" must be a non-empty array");
    for (const auto& v : j["scales"]) {
        double s = v.get<double>();
        if (!(s >= 0)) throw std::invalid_argument("sweep spec: scales must be non-negative");
        spec.scales.push_back(s);
    }
    if (j.contains("k")) spec.k = j["k"].get<std::uint64_t>();
    if (j.contains("l")) spec.l = j["l"].get<std::uint64_t>();
    if (j.contains("samples")) spec.samples = j["samples"].get<std::uint64_t>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("budget")) spec.search.budget = j["budget"].get<std::uint64_t>();
    if (spec.k < 2 || spec.k > spec.l) throw std::invalid_argument("sweep spec: need 2 <= k <= l");
    if (spec.samples == 0) throw std::invalid_argument("sweep spec: samples must be positive");
    for (std::uint64_t n : spec.n_values)
        if (n < 2) throw std::invalid_argument("sweep spec: orders must be >= 2");
    return spec;
}

struct SweepRow {
    std::uint64_t N = 0, k = 0, l = 0;
    double scale = 0.0;
    double p = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t free_count = 0;
    std::uint64_t budget_exhausted = 0;  // neither free nor witnessed; not a CSV column
    double free_frac = 0.0;
    double mean_gamma = 0.0;   // over free samples; NaN when none
    double mean_trials = 0.0;  // samples / free_count; +inf when none free
    std::uint64_t seed = 0;
};

// One sample = one sampled support, checked for freeness. The per-sample key
// chains (seed, N, scale index, sample) so any subset of cells reproduces
// bit-identically.
inline std::vector<SweepRow> density_sweep(const SweepSpec& spec, unsigned jobs = 1) {
    struct Cell {
        std::uint64_t N;
        std::size_t scale_index;
    };
    std::vector<std::uint64_t> n_sorted = spec.n_values;
    std::sort(n_sorted.begin(), n_sorted.end());
    n_sorted.erase(std::unique(n_sorted.begin(), n_sorted.end()), n_sorted.end());

    std::vector<Cell> cells;
    for (std::uint64_t N : n_sorted)
        for (std::size_t si = 0; si < spec.scales.size(); ++si) cells.push_back({N, si});

    std::vector<SweepRow> rows(cells.size());
    parallel_for(cells.size(), jobs, [&](std::size_t ci) {
        const Cell& cell = cells[ci];
        SweepRow row;
        row.N = cell.N;
        row.k = spec.k;
        row.l = spec.l;
        row.scale = spec.scales[cell.scale_index];
        row.samples = spec.samples;
        row.seed = spec.seed;
        double p = row.scale * base_density(spec.k, spec.l, cell.N);
        row.p = std::min(1.0, std::max(0.0, p));

        std::uint64_t cell_key = derive_key(derive_key(spec.seed, cell.N),
                                            static_cast<std::uint64_t>(cell.scale_index));
        std::uint64_t gamma_sum = 0;
        for (std::uint64_t s = 0; s < spec.samples; ++s) {
            SupportSet support = sample_support(cell.N, row.p, derive_key(cell_key, s));
            SearchResult sr = find_rectangle_integer(support, spec.k, spec.l, spec.search);
            if (sr.status == SearchStatus::budget_exhausted) {
                ++row.budget_exhausted;
            } else if (sr.status == SearchStatus::free_confirmed) {
                ++row.free_count;
                gamma_sum += support.size();
            }
        }
        row.free_frac = static_cast<double>(row.free_count) / static_cast<double>(row.samples);
        row.mean_gamma = row.free_count
                             ? static_cast<double>(gamma_sum) / static_cast<double>(row.free_count)
                             : std::nan("");
        row.mean_trials = row.free_count ? static_cast<double>(row.samples) /
                                               static_cast<double>(row.free_count)
                                         : std::numeric_limits<double>::infinity();
        rows[ci] = std::move(row);
    });
    return rows;  // already sorted by (N, scale index); scales keep spec order
}

namespace detail {

inline std::string fmt_g(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace detail

inline constexpr const char* kSweepCsvVersion = "sweep-csv/1";

inline std::string sweep_table_to_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "# params: k=" << spec.k << " l=" << spec.l << " samples=" << spec.samples
       << " seed=" << spec.seed << " n_values=[";
    for (std::size_t i = 0; i < spec.n_values.size(); ++i)
        os << (i ? "," : "") << spec.n_values[i];
    os << "] scales=[";
    for (std::size_t i = 0; i < spec.scales.size(); ++i)
        os << (i ? "," : "") << detail::fmt_g(spec.scales[i]);
    os << "] budget=" << spec.search.budget << "\n";
    os << "N,k,l,scale,p,samples,free_frac,mean_gamma,mean_trials,seed\n";
    for (const auto& r : rows) {
        os << r.N << ',' << r.k << ',' << r.l << ',' << detail::fmt_g(r.scale) << ','
           << detail::fmt_g(r.p) << ',' << r.samples << ',' << detail::fmt_g(r.free_frac) << ','
           << detail::fmt_g(r.mean_gamma) << ',' << detail::fmt_g(r.mean_trials) << ',' << r.seed
           << "\n";
    }
    return os.str();
}

struct CorollaryReport {
    std::uint64_t N = 0;
    std::uint64_t k = 0;  // = l = ceil(log2 N)
    Rational rho;
    double weight_bound = 0.0;  // (k+l)/(k^2 l^2) * N^(2 - rho)
    // Reference magnitudes N^2 / log2(N)^i for i = 3..6; asymptotic shapes
    // only, the hidden constants are unspecified.
    double ref_log3 = 0.0, ref_log4 = 0.0, ref_log5 = 0.0, ref_log6 = 0.0;
    std::string magnitude_note;
};

inline CorollaryReport corollary_report(std::uint64_t N) {
    if (N < 4) throw std::invalid_argument("corollary report requires N >= 4");
    CorollaryReport rep;
    rep.N = N;
    rep.k = ceil_log2_u64(N);
    RhoValue rho = rho_closed(rep.k, rep.k);
    rep.rho = rho.value;
    double kk = static_cast<double>(rep.k);
    double dn = static_cast<double>(N);
    rep.weight_bound = (2.0 / (kk * kk * kk)) * std::pow(dn, 2.0 - rho.value.to_double());
    double lg = std::log2(dn);
    rep.ref_log3 = dn * dn / std::pow(lg, 3.0);
    rep.ref_log4 = dn * dn / std::pow(lg, 4.0);
    rep.ref_log5 = dn * dn / std::pow(lg, 5.0);
    rep.ref_log6 = dn * dn / std::pow(lg, 6.0);
    rep.magnitude_note = "asymptotic, constant unspecified";
    return rep;
}

}  // namespace thincirc
