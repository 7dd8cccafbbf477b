// siegel: command-line front end for covariants, Fourier expansions and verification suites.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "siegel/covariants/parse.hpp"
#include "siegel/modp/modp.hpp"
#include "siegel/qexp/analysis.hpp"
#include "siegel/ringlab/suites.hpp"

namespace {

using namespace siegel;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Common {
    bool json = false;
    std::optional<std::uint64_t> prime;
    std::string cache;
    bool no_cache = false;
};

ringlab::Registry make_registry(const Common& c) {
    if (c.no_cache) return ringlab::Registry();
    if (!c.cache.empty()) return ringlab::Registry(std::filesystem::path(c.cache));
    return ringlab::Registry::from_environment();
}

int cmd_covariant(const std::string& spec, const Common& c) {
    const cov::Covariant cv = cov::resolve_covariant(spec);
    nlohmann::json j = {{"covariant", spec}, {"degree", cv.degree()}, {"order", cv.order()}};
    std::string text;
    if (c.prime) {
        auto red = modp::reduce_mod_p(cv, *c.prime);
        text = red.poly.str();
        j["polynomial"] = red.poly.to_json();
    } else {
        text = cv.poly().str();
        j["polynomial"] = cv.poly().to_json();
    }
    j["text"] = text;
    if (c.json) std::cout << j.dump() << "\n";
    else std::cout << text << "\n";
    return kPass;
}

int cmd_expand(const std::string& name, int order, const Common& c) {
    auto reg = make_registry(c);
    const auto form = reg.named_form(name, order);
    if (c.prime) {
        const arith::PrimeField f(*c.prime);
        const auto red = qexp::change_domain<arith::Fp>(form.expansion, f);
        if (c.json) std::cout << nlohmann::json{{"name", name}, {"recipe", form.recipe}, {"expansion", red.to_json()}}.dump() << "\n";
        else std::cout << qexp::render(red, name + " mod " + std::to_string(*c.prime));
        return kPass;
    }
    if (c.json)
        std::cout << nlohmann::json{{"name", name}, {"recipe", form.recipe}, {"normalization", form.normalization},
                                    {"expansion", form.expansion.to_json()}}
                         .dump()
                  << "\n";
    else std::cout << qexp::render(form.expansion, name);
    return kPass;
}

int cmd_verify(const std::string& suite, const ringlab::SuiteOptions& opt, const Common& c) {
    auto reg = make_registry(c);
    std::vector<std::string> names;
    if (suite == "all") names = ringlab::suite_names();
    else names.push_back(suite);
    bool ok = true;
    for (const auto& n : names) {
        const auto report = ringlab::run_suite(n, opt, reg);
        std::cout << (c.json ? ringlab::render_json_lines(report) : ringlab::render(report));
        ok = ok && report.pass();
    }
    return ok ? kPass : kFail;
}

int cmd_list() {
    std::cout << "forms:";
    for (const auto& n : ringlab::registry_names()) std::cout << " " << n;
    std::cout << "\ncovariants:";
    for (const auto& n : cov::Catalog::instance().names()) std::cout << " " << n;
    std::cout << "\nsuites: all";
    for (const auto& n : ringlab::suite_names()) std::cout << " " << n;
    std::cout << "\n";
    return kPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Siegel modular forms of degree 2 from covariants of binary sextics"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* sub, bool with_cache) {
        sub->add_flag("--json", common.json, "Machine-readable output (JSON lines)");
        if (with_cache) {
            sub->add_option("--cache", common.cache, "Cache directory (default: $SIEGEL_CACHE_DIR)");
            sub->add_flag("--no-cache", common.no_cache, "Do not read or write the disk cache");
        }
    };
    std::uint64_t prime = 0;

    std::string cov_spec;
    auto* covariant = app.add_subcommand("covariant", "Print a named covariant or an inline polynomial");
    covariant->add_option("spec", cov_spec, "Catalog name (A, C2,4, H, ...) or polynomial in a0..a6, x1, x2")->required();
    covariant->add_option("--prime", prime, "Reduce modulo p");
    add_common(covariant, false);

    std::string form_name;
    int order = 2;
    auto* expand = app.add_subcommand("expand", "Fourier expansion of a named form");
    expand->add_option("form", form_name, "Form name (see 'list')")->required();
    expand->add_option("--order", order, "Truncation N: coefficients on [0, N]^2")->check(CLI::PositiveNumber);
    expand->add_option("--prime", prime, "Reduce the coefficients modulo p");
    add_common(expand, true);

    std::string suite;
    ringlab::SuiteOptions opt;
    int verify_order = 0;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", suite, "Suite name or 'all' (see 'list')")->required();
    verify->add_option("--order", verify_order, "Truncation N (default: per suite)")->check(CLI::PositiveNumber);
    verify->add_option("--kmax", opt.kmax, "Largest even weight for even-ring")->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", opt.seed, "Seed for sampled checks");
    add_common(verify, true);

    auto* list = app.add_subcommand("list", "List forms, covariants and suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }
    if (prime) common.prime = prime;
    if (verify_order) opt.order = verify_order;

    try {
        if (*covariant) return cmd_covariant(cov_spec, common);
        if (*expand) return cmd_expand(form_name, order, common);
        if (*verify) {
            if (suite != "all" && std::find(ringlab::suite_names().begin(), ringlab::suite_names().end(), suite) ==
                                      ringlab::suite_names().end())
                throw UnknownName("unknown suite '" + suite + "'");
            return cmd_verify(suite, opt, common);
        }
        if (*list) return cmd_list();
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (!cov_spec.empty() && e.position() <= cov_spec.size())
            std::cerr << "  " << cov_spec << "\n  " << std::string(e.position(), ' ') << "^\n";
        return kUsage;
    } catch (const UnknownName& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
