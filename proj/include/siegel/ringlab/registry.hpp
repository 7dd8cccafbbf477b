#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "siegel/numap/nu.hpp"
#include "siegel/theta/theta.hpp"

namespace siegel::ringlab {

using arith::Integer;
using Expansion = qexp::FourierExpansion<Integer>;

/// Bumped whenever a pinned normalization changes; part of every cache key.
inline constexpr int kNormalizationVersion = 1;

struct NamedForm {
    std::string name;
    Expansion expansion;
    std::string recipe;
    std::string normalization;
};

struct Recipe {
    std::string description;
    std::string normalization;
    std::function<Expansion(int)> build;
    /// Extra text folded into the hash (e.g. the defining covariant).
    std::function<std::string()> fingerprint;
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline Recipe nu_recipe(const std::string& covariant, int m, std::function<const cov::Covariant&()> get, std::string note) {
    Recipe r;
    r.description = "chi10^" + std::to_string(m) + " * nu(" + covariant + ")";
    r.normalization = std::move(note);
    r.build = [get, m](int n) { return nu::nu_normalized<Integer>(get(), m, n).expansion; };
    r.fingerprint = [get] { return get().poly().str(); };
    return r;
}

inline const std::map<std::string, Recipe>& recipes() {
    static const std::map<std::string, Recipe> table = [] {
        std::map<std::string, Recipe> t;
        t["chi10"] = {"chi5^2 from the ten even theta constants", "(1,1) coefficient r^-1 - 2 + r",
                      [](int n) { return theta::chi10<Integer>(n); }, [] { return std::string("theta"); }};
        t["chi6_8"] = {"chi5 * chi6_3 from theta constants and odd theta gradients",
                       "(1,1) coefficient (0, 0, r^-1 - 2 + r, 2(r - r^-1), r^-1 - 2 + r, 0, 0)",
                       [](int n) { return theta::chi6_8<Integer>(n); }, [] { return std::string("theta"); }};
        t["psi4"] = nu_recipe("B", 0, [] { return std::cref(cov::invariant("B")); }, "B pinned by 81 a0a6a3^2, no a3^4 term");
        t["psi6"] = nu_recipe("-8AB - 3C", 0, [] { return std::cref(cov::psi6_invariant()); },
                              "invariant pinned by 1458 a0a6a3^4 - 486 (a0a4a5 + a1a2a6) a3^3");
        t["chi12"] = nu_recipe("A", 1, [] { return std::cref(cov::invariant("A")); }, "A = 120 a0a6 - 20 a1a5 + 8 a2a4 - 3 a3^2");
        t["chi35"] = nu_recipe("E", 2, [] { return std::cref(cov::invariant("E")); }, "E pinned by -729 a0^2a5^3a3^10");
        t["chi8_8"] = nu_recipe("H", 1, [] { return std::cref(cov::grace_young("H")); }, "Hessian (f,f)_2 rescaled to content 1");
        t["chi4_10"] = nu_recipe("V8,4", 1, [] { return std::cref(cov::grace_young("V8,4")); }, "(f,f)_4 rescaled to content 1");
        t["nuD"] = nu_recipe("D", 0, [] { return std::cref(cov::invariant("D")); }, "D pinned by 729 a0^2a6^2a3^6");
        return t;
    }();
    return table;
}

} // namespace detail

inline std::vector<std::string> registry_names() {
    std::vector<std::string> out;
    for (const auto& [n, r] : detail::recipes()) out.push_back(n);
    return out;
}

inline bool registry_contains(const std::string& name) { return detail::recipes().count(name) > 0; }

/// Hash of everything that determines the stored expansion.
inline std::uint64_t recipe_hash(const std::string& name, int n) {
    auto it = detail::recipes().find(name);
    if (it == detail::recipes().end()) throw UnknownName("unknown form '" + name + "'");
    const auto& r = it->second;
    return detail::fnv1a(name + "|" + std::to_string(n) + "|" + std::to_string(kNormalizationVersion) + "|" + r.description +
                         "|" + r.normalization + "|" + r.fingerprint());
}

/// Builds named forms; optionally persists them as JSON under a cache directory.
/// Cache entries are replaced atomically and revalidated by recipe hash.
class Registry {
public:
    Registry() = default;
    explicit Registry(std::optional<std::filesystem::path> cache_dir) : cache_(std::move(cache_dir)) {}

    /// Cache directory from $SIEGEL_CACHE_DIR, if set.
    static Registry from_environment() {
        if (const char* d = std::getenv("SIEGEL_CACHE_DIR"); d && *d) return Registry(std::filesystem::path(d));
        return Registry();
    }

    const std::optional<std::filesystem::path>& cache_dir() const noexcept { return cache_; }

    /// Throws UnknownName.
    NamedForm named_form(const std::string& name, int n) {
        auto it = detail::recipes().find(name);
        if (it == detail::recipes().end()) throw UnknownName("unknown form '" + name + "'");
        if (n < 1) throw InvalidArgument("truncation must be at least 1");
        const auto& r = it->second;
        auto key = std::make_pair(name, n);
        {
            std::lock_guard lock(mu_);
            if (auto m = memo_.find(key); m != memo_.end()) return m->second;
        }
        // Built outside the lock so that different forms can be built concurrently.
        const std::uint64_t h = recipe_hash(name, n);
        std::optional<NamedForm> form;
        if (cache_) form = load(name, n, h);
        if (!form) {
            form = NamedForm{name, r.build(n), r.description, r.normalization};
            if (cache_) store(*form, n, h);
        }
        std::lock_guard lock(mu_);
        return memo_.try_emplace(key, std::move(*form)).first->second;
    }

    /// Several forms built concurrently, returned in the order requested.
    std::vector<NamedForm> named_forms(const std::vector<std::string>& names, int n) {
        std::vector<std::future<NamedForm>> jobs;
        for (const auto& name : names) jobs.push_back(std::async(std::launch::async, [this, name, n] { return named_form(name, n); }));
        std::vector<NamedForm> out;
        for (auto& j : jobs) out.push_back(j.get());
        return out;
    }

    /// Rebuild from the recipe, bypassing every cache.
    static NamedForm rebuild(const std::string& name, int n) {
        auto it = detail::recipes().find(name);
        if (it == detail::recipes().end()) throw UnknownName("unknown form '" + name + "'");
        return {name, it->second.build(n), it->second.description, it->second.normalization};
    }

    std::filesystem::path cache_path(const std::string& name, int n) const {
        if (!cache_) throw InvalidArgument("no cache directory configured");
        return *cache_ / (name + "_N" + std::to_string(n) + ".json");
    }

private:
    std::optional<NamedForm> load(const std::string& name, int n, std::uint64_t h) const {
        auto path = cache_path(name, n);
        std::ifstream in(path);
        if (!in) return std::nullopt;
        try {
            auto j = nlohmann::json::parse(in);
            if (j.at("recipe_hash").get<std::uint64_t>() != h) return std::nullopt;
            if (j.at("normalization_version").get<int>() != kNormalizationVersion) return std::nullopt;
            return NamedForm{name, Expansion::from_json(j.at("expansion"), {}), j.at("recipe").get<std::string>(),
                             j.at("normalization").get<std::string>()};
        } catch (const std::exception&) {
            return std::nullopt; // a damaged entry is rebuilt
        }
    }

    void store(const NamedForm& f, int n, std::uint64_t h) const {
        std::filesystem::create_directories(*cache_);
        nlohmann::json j = {{"name", f.name},
                            {"truncation", n},
                            {"recipe", f.recipe},
                            {"normalization", f.normalization},
                            {"normalization_version", kNormalizationVersion},
                            {"recipe_hash", h},
                            {"expansion", f.expansion.to_json()}};
        auto path = cache_path(f.name, n);
        std::random_device rd;
        auto tmp = path;
        tmp += ".tmp" + std::to_string(rd());
        {
            std::ofstream out(tmp);
            if (!out) throw InvalidArgument("cannot write cache file " + tmp.string());
            out << j.dump() << "\n";
        }
        std::filesystem::rename(tmp, path);
    }

    std::optional<std::filesystem::path> cache_;
    std::mutex mu_;
    std::map<std::pair<std::string, int>, NamedForm> memo_;
};

/// Registry without disk cache.
inline NamedForm named_form(const std::string& name, int n) {
    static Registry r;
    return r.named_form(name, n);
}

} // namespace siegel::ringlab
