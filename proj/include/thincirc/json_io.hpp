// JSON encodings for matrices and block witnesses.
//
// Matrix object: {"n": <int>, "orientation": "plus"|"minus",
//                 "support": [<ints ascending>]}
// plus an optional compact "support_hex" field: bytes in index order, bit
// (j mod 8) of byte (j div 8) carries row bit j. When both support fields
// are present they must agree.
// Witness object: {"rows": [...], "cols": [...],
//                  "mode": "integer_sums"|"cyclic"}
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "thincirc/circulant.hpp"
#include "thincirc/freeness.hpp"
#include "thincirc/support_set.hpp"

namespace thincirc {

inline constexpr const char* kMatrixJsonVersion = "matrix-json/1";
inline constexpr const char* kWitnessJsonVersion = "witness-json/1";

inline std::string support_to_hex(const SupportSet& s) {
    std::size_t nbytes = static_cast<std::size_t>((s.capacity() + 7) / 8);
    std::vector<std::uint8_t> bytes(nbytes, 0);
    for (std::uint64_t m : s.members())
        bytes[static_cast<std::size_t>(m >> 3)] |= static_cast<std::uint8_t>(1u << (m & 7));
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * nbytes);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 15]);
    }
    return out;
}

inline std::vector<std::uint64_t> support_from_hex(const std::string& hex, std::uint64_t n) {
    std::size_t nbytes = static_cast<std::size_t>((n + 7) / 8);
    if (hex.size() != 2 * nbytes)
        throw std::invalid_argument("support_hex: expected " + std::to_string(2 * nbytes) +
                                    " hex digits, got " + std::to_string(hex.size()));
    auto nibble = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
        throw std::invalid_argument("support_hex: invalid hex digit");
    };
    std::vector<std::uint64_t> members;
    for (std::size_t i = 0; i < nbytes; ++i) {
        unsigned byte = (nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]);
        for (unsigned bit = 0; bit < 8; ++bit) {
            if (!((byte >> bit) & 1)) continue;
            std::uint64_t j = static_cast<std::uint64_t>(i) * 8 + bit;
            if (j >= n) throw std::invalid_argument("support_hex: bit set beyond capacity");
            members.push_back(j);
        }
    }
    return members;
}

namespace detail {
// True for any integer-valued JSON number >= 0, independent of whether the
// library stored it signed or unsigned (parsed text is unsigned, values
// assigned from int literals are signed).
inline bool is_nonneg_integer(const nlohmann::json& v) {
    if (v.is_number_unsigned()) return true;
    return v.is_number_integer() && v.get<std::int64_t>() >= 0;
}
}  // namespace detail

inline nlohmann::json matrix_to_json(const CirculantMatrix& m, bool include_hex = false) {
    nlohmann::json j;
    j["n"] = m.n();
    j["orientation"] = orientation_name(m.orientation());
    j["support"] = m.row().members();
    if (include_hex) j["support_hex"] = support_to_hex(m.row());
    return j;
}

inline CirculantMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("matrix json: expected an object");
    if (!j.contains("n") || !detail::is_nonneg_integer(j["n"]))
        throw std::invalid_argument("matrix json: missing or invalid \"n\"");
    std::uint64_t n = j["n"].get<std::uint64_t>();
    if (!j.contains("orientation") || !j["orientation"].is_string())
        throw std::invalid_argument("matrix json: missing or invalid \"orientation\"");
    std::string o = j["orientation"].get<std::string>();
    Orientation orientation;
    if (o == "plus")
        orientation = Orientation::plus;
    else if (o == "minus")
        orientation = Orientation::minus;
    else
        throw std::invalid_argument("matrix json: orientation must be \"plus\" or \"minus\"");

    bool have_list = j.contains("support");
    bool have_hex = j.contains("support_hex");
    if (!have_list && !have_hex)
        throw std::invalid_argument("matrix json: need \"support\" or \"support_hex\"");

    std::vector<std::uint64_t> members;
    if (have_list) {
        if (!j["support"].is_array())
            throw std::invalid_argument("matrix json: \"support\" must be an array");
        for (const auto& v : j["support"]) {
            if (!detail::is_nonneg_integer(v))
                throw std::invalid_argument("matrix json: support members must be non-negative");
            members.push_back(v.get<std::uint64_t>());
        }
    }
    if (have_hex) {
        auto from_hex = support_from_hex(j["support_hex"].get<std::string>(), n);
        if (have_list) {
            std::vector<std::uint64_t> sorted = members;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != from_hex)
                throw std::invalid_argument("matrix json: support and support_hex disagree");
        } else {
            members = std::move(from_hex);
        }
    }
    return CirculantMatrix(SupportSet(n, std::move(members)), orientation);
}

inline nlohmann::json witness_to_json(const Witness& w) {
    nlohmann::json j;
    j["rows"] = w.rows;
    j["cols"] = w.cols;
    j["mode"] = sum_mode_name(w.mode);
    return j;
}

inline Witness witness_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("mode"))
        throw std::invalid_argument("witness json: expected {rows, cols, mode}");
    Witness w;
    for (const auto& v : j["rows"]) {
        if (!detail::is_nonneg_integer(v))
            throw std::invalid_argument("witness json: row indices must be non-negative");
        w.rows.push_back(v.get<std::uint64_t>());
    }
    for (const auto& v : j["cols"]) {
        if (!detail::is_nonneg_integer(v))
            throw std::invalid_argument("witness json: column indices must be non-negative");
        w.cols.push_back(v.get<std::uint64_t>());
    }
    std::string mode = j["mode"].get<std::string>();
    if (mode == "integer_sums")
        w.mode = SumMode::integer_sums;
    else if (mode == "cyclic")
        w.mode = SumMode::cyclic;
    else
        throw std::invalid_argument("witness json: unknown mode");
    return w;
}

}  // namespace thincirc
