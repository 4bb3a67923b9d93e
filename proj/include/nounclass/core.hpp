#ifndef NOUNCLASS_CORE_HPP
#define NOUNCLASS_CORE_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

/**
 * @file core.hpp
 *
 * @brief Shared value types and error classes.
 */

namespace nounclass {

inline constexpr std::string_view tool_version = "0.3.0";

/**
 * Input failed validation (bad record, bad flag combination, inconsistent configuration).
 */
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * A file could not be opened, read or written.
 */
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * An optional backend was requested but not compiled in.
 */
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * A noun class identifier. Bantu classes are small positive integers (1-23);
 * the sentinel `unknown()` marks a word or cluster without a class.
 */
class NounClass {
public:
    constexpr NounClass() = default;
    constexpr explicit NounClass(int id) : id_(id) {}

    static constexpr NounClass unknown() { return NounClass{}; }

    constexpr bool is_unknown() const { return id_ == unknown_id; }
    constexpr int id() const { return id_; }

    constexpr auto operator<=>(const NounClass&) const = default;

    std::string to_string() const {
        return is_unknown() ? std::string("unknown") : std::to_string(id_);
    }

private:
    static constexpr int unknown_id = -1;
    int id_ = unknown_id;
};

/**
 * Closed range of class ids accepted from inventories and paradigm files.
 */
struct ClassUniverse {
    int min_id = 1;
    int max_id = 23;

    constexpr bool contains(NounClass c) const {
        return !c.is_unknown() && c.id() >= min_id && c.id() <= max_id;
    }
};

/**
 * Source of a per-word prediction.
 */
enum class Method { transfer, clustering, frequency, random };

inline std::string_view method_name(Method m) {
    switch (m) {
        case Method::transfer: return "transfer";
        case Method::clustering: return "clustering";
        case Method::frequency: return "frequency";
        case Method::random: return "random";
    }
    return "?";
}

inline std::optional<Method> parse_method(std::string_view name) {
    if (name == "transfer") return Method::transfer;
    if (name == "clustering") return Method::clustering;
    if (name == "frequency") return Method::frequency;
    if (name == "random") return Method::random;
    return std::nullopt;
}

/**
 * (word, class, confidence, method) produced by any stage.
 */
struct Prediction {
    std::string word;
    NounClass noun_class;
    double confidence = 0;
    Method method = Method::transfer;

    bool operator==(const Prediction&) const = default;
};

}

#endif
