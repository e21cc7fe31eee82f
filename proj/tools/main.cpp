// Command-line front end: construct / verify / rho / sumset-min / enum-rect /
// experiment. Conventions: primary output (values, JSON, CSV) on stdout or
// --out, resolved parameters and diagnostics on stderr, exit codes
//   0 ok, 1 internal invariant violation, 2 bad arguments,
//   3 witness found, 4 budget or trial limit exhausted.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thincirc/thincirc.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitWitness = 3;
constexpr int kExitBudget = 4;

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void log_params(const std::string& line) { std::cerr << "# params: " << line << "\n"; }

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

// --- rho ------------------------------------------------------------------

int run_rho(std::uint64_t k, std::uint64_t l) {
    if (k > l) {
        std::cerr << "note: exponent is symmetric in the two block sizes; using (k,l)=(" << l
                  << "," << k << ")\n";
        std::swap(k, l);
    }
    log_params("rho k=" + std::to_string(k) + " l=" + std::to_string(l));
    thincirc::RhoValue v = thincirc::rho_closed(static_cast<std::int64_t>(k),
                                                static_cast<std::int64_t>(l));
    std::cerr << "# argmax_n=" << v.argmax_n << " branch=" << thincirc::rho_branch_name(v.branch)
              << "\n";
    std::cout << v.value.str() << " = " << fmt_double(v.value.to_double()) << "\n";
    return kExitOk;
}

// --- sumset-min -------------------------------------------------------------

int run_sumset_min(std::uint64_t k, std::uint64_t l, std::uint64_t n, const std::string& oracle,
                   std::int64_t radius) {
    log_params("sumset-min k=" + std::to_string(k) + " l=" + std::to_string(l) +
               " n=" + std::to_string(n) + " oracle=" + (oracle.empty() ? "none" : oracle) +
               " radius=" + std::to_string(radius));
    thincirc::SumsetBoundQuery q{static_cast<std::int64_t>(n), static_cast<std::int64_t>(k),
                                 static_cast<std::int64_t>(l)};
    std::int64_t closed = thincirc::min_sumset_size(q);
    std::int64_t value = closed;
    if (oracle == "partition") {
        auto r = thincirc::min_sumset_by_partition_search(q);
        if (r.value != closed) {
            std::cerr << "error: partition oracle " << r.value << " != closed form " << closed
                      << "\n";
            return kExitInternal;
        }
        value = r.value;
    } else if (oracle == "grid") {
        std::int64_t g = thincirc::min_sumset_grid_exhaustive(q, radius);
        if (g != closed) {
            std::cerr << "error: grid minimum at dimension exactly n is " << g
                      << " but closed form gives " << closed
                      << " (closed form is the simplex-family bound; for n >= 3 it may only"
                         " be attained by a lower-dimensional pair)\n";
            return kExitInternal;
        }
        value = g;
    }
    std::cout << value << "\n";
    return kExitOk;
}

// --- verify -----------------------------------------------------------------

int run_verify(const std::string& input, std::uint64_t k, std::uint64_t l,
               const std::string& mode, std::uint64_t budget, std::uint64_t naive_limit) {
    json j = load_json_file(input);
    if (j.contains("matrix")) j = j["matrix"];
    thincirc::CirculantMatrix m = thincirc::matrix_from_json(j);
    log_params("verify input=" + input + " n=" + std::to_string(m.n()) +
               " orientation=" + thincirc::orientation_name(m.orientation()) +
               " k=" + std::to_string(k) + " l=" + std::to_string(l) + " mode=" + mode +
               " budget=" + std::to_string(budget));

    thincirc::FreenessOptions opts;
    opts.budget = budget;
    opts.naive_order_limit = naive_limit;
    thincirc::SearchResult res;
    if (mode == "cyclic") {
        res = thincirc::is_free_cyclic(m, static_cast<unsigned>(k), static_cast<unsigned>(l),
                                       opts);
    } else if (mode == "integer") {
        res = thincirc::find_rectangle_integer(m.row(), static_cast<unsigned>(k),
                                               static_cast<unsigned>(l), opts);
    } else {
        throw std::invalid_argument("mode must be cyclic or integer");
    }

    if (res.status == thincirc::SearchStatus::budget_exhausted) {
        std::cerr << "budget exhausted after " << res.work << " words of intersection work\n";
        return kExitBudget;
    }
    if (res.status == thincirc::SearchStatus::witness_found) {
        bool ok = mode == "cyclic"
                      ? thincirc::verify_witness_entries(m, *res.witness,
                                                         static_cast<unsigned>(k),
                                                         static_cast<unsigned>(l))
                      : thincirc::verify_witness_integer(m.row(), *res.witness,
                                                         static_cast<unsigned>(k),
                                                         static_cast<unsigned>(l));
        if (!ok) {
            std::cerr << "error: search produced a witness that fails re-verification\n";
            return kExitInternal;
        }
        std::cout << thincirc::witness_to_json(*res.witness).dump(2) << "\n";
        return kExitWitness;
    }
    std::cout << "free\n";
    return kExitOk;
}

// --- construct ----------------------------------------------------------------

int run_construct(std::uint64_t n, std::uint64_t k, std::uint64_t l, double scale,
                  std::uint64_t max_trials, std::uint64_t seed, std::uint64_t budget,
                  unsigned jobs, const std::string& out_path) {
    thincirc::ConstructionParams params;
    params.n = n;
    params.k = k;
    params.l = l;
    params.density_scale = scale;
    params.max_trials = max_trials;
    params.seed = seed;
    params.search.budget = budget;
    params.jobs = jobs;
    log_params("construct n=" + std::to_string(n) + " k=" + std::to_string(k) +
               " l=" + std::to_string(l) + " scale=" + fmt_double(scale) +
               " max_trials=" + std::to_string(max_trials) + " seed=" + std::to_string(seed) +
               " budget=" + std::to_string(budget) + " jobs=" + std::to_string(jobs));

    thincirc::ConstructionOutcome outcome = thincirc::construct_thin_circulant(params);
    if (!outcome.result) {
        std::cerr << "no acceptable support after " << max_trials << " trials (p=" <<
            fmt_double(outcome.p) << ", threshold=" << fmt_double(outcome.threshold) << ")\n";
        std::size_t shown = 0;
        for (const auto& r : outcome.rejects) {
            if (shown++ == 10) {
                std::cerr << "  ... " << (outcome.rejects.size() - 10) << " more\n";
                break;
            }
            std::cerr << "  trial " << r.trial << ": " << r.reason << "\n";
        }
        return kExitBudget;
    }

    const thincirc::ConstructionResult& res = *outcome.result;
    // Accepted supports were verified once already; re-check before emitting.
    thincirc::SupportSet base(n, res.matrix.row().members());
    thincirc::SearchResult recheck = thincirc::find_rectangle_integer(
        base, static_cast<unsigned>(k), static_cast<unsigned>(l), params.search);
    if (recheck.status != thincirc::SearchStatus::free_confirmed) {
        std::cerr << "error: accepted matrix failed re-verification\n";
        return kExitInternal;
    }

    json out;
    out["params"] = { {"n", n},           {"k", k},
                      {"l", l},           {"scale", scale},
                      {"max_trials", max_trials}, {"seed", seed},
                      {"budget", budget} };
    out["p"] = res.p;
    out["threshold"] = res.threshold;
    out["trials_used"] = res.trials_used;
    out["row_weight"] = res.row_weight;
    out["total_weight"] = thincirc::weight(res.matrix).weight;
    out["accepted_on"] = thincirc::accept_kind_name(res.accepted_on);
    out["rejected_trials"] = res.trials_used - 1;
    out["matrix"] = thincirc::matrix_to_json(res.matrix, /*include_hex=*/true);

    std::string text = out.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
    std::cerr << "accepted trial " << (res.trials_used - 1) << ", row weight " << res.row_weight
              << ", " << thincirc::accept_kind_name(res.accepted_on) << "\n";
    return kExitOk;
}

// --- enum-rect -----------------------------------------------------------------

json lemma1_to_json(const thincirc::Lemma1Report& r) {
    return json{{"lemma", 1},
                {"N", r.N},
                {"k", r.k},
                {"l", r.l},
                {"rectangles", r.rectangles},
                {"classes", r.classes},
                {"max_fill", r.max_fill.str()},
                {"violations", r.violations}};
}

json lemma2_to_json(const thincirc::Lemma2Report& r) {
    json buckets = json::array();
    for (const auto& b : r.buckets)
        buckets.push_back(json{{"n", b.n}, {"classes", b.classes}, {"bound", b.bound}});
    return json{{"lemma", 2}, {"N", r.N},           {"k", r.k},
                {"l", r.l},   {"classes", r.classes}, {"buckets", buckets},
                {"violations", r.violations}};
}

json lemma3_to_json(const thincirc::Lemma3Report& r) {
    return json{{"lemma", 3},
                {"N", r.N},
                {"k", r.k},
                {"l", r.l},
                {"rectangles", r.rectangles},
                {"classes", r.classes},
                {"m_range", {r.min_m, r.max_m}},
                {"n_range", {r.min_n, r.max_n}},
                {"a_image_size_range", {r.min_a_size, r.max_a_size}},
                {"b_image_size_range", {r.min_b_size, r.max_b_size}},
                {"rho", r.rho.str()},
                {"violations", r.violations}};
}

int run_enum_rect(std::uint64_t N, std::uint64_t k, std::uint64_t l, const std::string& verify,
                  const std::string& format, bool ordered, bool force, unsigned jobs) {
    log_params("enum-rect n=" + std::to_string(N) + " k=" + std::to_string(k) +
               " l=" + std::to_string(l) + " verify=" + (verify.empty() ? "none" : verify) +
               " format=" + format + " ordered=" + (ordered ? "1" : "0") +
               " jobs=" + std::to_string(jobs));
    bool as_json = format == "json";

    if (verify.empty()) {
        auto rects = thincirc::enumerate_rectangles(N, k, l, ordered, force);
        if (as_json) {
            json arr = json::array();
            for (const auto& e : rects) arr.push_back(json{{"a", e.a}, {"b", e.b}});
            json out{{"params", {{"n", N}, {"k", k}, {"l", l}, {"ordered", ordered}}},
                     {"count", rects.size()},
                     {"rectangles", arr}};
            std::cout << out.dump(2) << "\n";
        } else {
            for (const auto& e : rects) std::cout << thincirc::rectangle_str(e) << "\n";
            std::cerr << "# " << rects.size() << " rectangles\n";
        }
        return kExitOk;
    }

    bool bad = false;
    json reports = json::array();
    auto note = [&](const std::string& name, std::size_t violations) {
        std::cerr << name << ": " << (violations ? "FAIL" : "ok") << " (" << violations
                  << " violations)\n";
        if (violations) bad = true;
    };
    if (verify == "lemma1" || verify == "all") {
        auto r = thincirc::verify_lemma1(N, k, l, jobs, force);
        if (as_json)
            reports.push_back(lemma1_to_json(r));
        else
            std::cout << "lemma1: rectangles=" << r.rectangles << " classes=" << r.classes
                      << " max_fill=" << r.max_fill.str() << " violations=" << r.violations.size()
                      << "\n";
        note("lemma1", r.violations.size());
    }
    if (verify == "lemma2" || verify == "all") {
        auto r = thincirc::verify_lemma2(N, k, l, jobs, force);
        if (as_json) {
            reports.push_back(lemma2_to_json(r));
        } else {
            std::cout << "lemma2: classes=" << r.classes;
            for (const auto& b : r.buckets)
                std::cout << " n=" << b.n << ":" << b.classes << "<=" << b.bound;
            std::cout << " violations=" << r.violations.size() << "\n";
        }
        note("lemma2", r.violations.size());
    }
    if (verify == "lemma3" || verify == "all") {
        auto r = thincirc::verify_lemma3(N, k, l, force);
        if (as_json)
            reports.push_back(lemma3_to_json(r));
        else
            std::cout << "lemma3: rectangles=" << r.rectangles << " classes=" << r.classes
                      << " m=[" << r.min_m << "," << r.max_m << "] n=[" << r.min_n << ","
                      << r.max_n << "] rho=" << r.rho.str()
                      << " violations=" << r.violations.size() << "\n";
        note("lemma3", r.violations.size());
    }
    if (as_json) std::cout << reports.dump(2) << "\n";
    return bad ? kExitInternal : kExitOk;
}

// --- experiment ------------------------------------------------------------------

int run_sweep(const std::string& spec_path, const std::string& out_path, unsigned jobs) {
    thincirc::SweepSpec spec = thincirc::sweep_spec_from_json(load_json_file(spec_path));
    std::ostringstream ps;
    ps << "experiment-sweep spec=" << spec_path << " k=" << spec.k << " l=" << spec.l
       << " samples=" << spec.samples << " seed=" << spec.seed << " jobs=" << jobs;
    log_params(ps.str());

    auto rows = thincirc::density_sweep(spec, jobs);
    for (const auto& r : rows)
        if (r.budget_exhausted)
            std::cerr << "warning: N=" << r.N << " scale=" << fmt_double(r.scale) << ": "
                      << r.budget_exhausted << " samples hit the verifier budget\n";
    std::string csv = thincirc::sweep_table_to_csv(spec, rows);
    if (out_path.empty())
        std::cout << csv;
    else
        write_text_file(out_path, csv);
    return kExitOk;
}

int run_corollary(std::uint64_t N, const std::string& format) {
    log_params("experiment-corollary n=" + std::to_string(N) + " format=" + format);
    thincirc::CorollaryReport rep = thincirc::corollary_report(N);
    if (format == "json") {
        json out{{"N", rep.N},
                 {"k", rep.k},
                 {"l", rep.k},
                 {"rho", rep.rho.str()},
                 {"weight_bound", rep.weight_bound},
                 {"reference_magnitudes",
                  {{"N^2/log2^3", rep.ref_log3},
                   {"N^2/log2^4", rep.ref_log4},
                   {"N^2/log2^5", rep.ref_log5},
                   {"N^2/log2^6", rep.ref_log6}}},
                 {"note", rep.magnitude_note}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "N=" << rep.N << " k=l=" << rep.k << " rho=" << rep.rho.str() << " ("
                  << fmt_double(rep.rho.to_double()) << ")\n";
        std::cout << "weight bound (2/k^3)*N^(2-rho) = " << fmt_double(rep.weight_bound) << "\n";
        std::cout << "reference magnitudes (" << rep.magnitude_note << "):"
                  << " N^2/log2^3=" << fmt_double(rep.ref_log3)
                  << " N^2/log2^4=" << fmt_double(rep.ref_log4)
                  << " N^2/log2^5=" << fmt_double(rep.ref_log5)
                  << " N^2/log2^6=" << fmt_double(rep.ref_log6) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thin circulant matrix toolkit"};
    app.set_version_flag("--version",
                         std::string("thincirc 1.0.0 (") + thincirc::kMatrixJsonVersion + ", " +
                             thincirc::kWitnessJsonVersion + ", " + thincirc::kSweepCsvVersion +
                             ")");
    app.require_subcommand(1);
    unsigned jobs = thincirc::default_jobs();
    app.add_option("--jobs", jobs, "worker thread cap")->capture_default_str();

    // rho
    auto* rho_cmd = app.add_subcommand("rho", "sumset exponent for a block shape");
    std::uint64_t rk = 2, rl = 2;
    rho_cmd->add_option("--k", rk, "block rows")->required();
    rho_cmd->add_option("--l", rl, "block columns")->required();

    // sumset-min
    auto* smin = app.add_subcommand("sumset-min", "minimum sumset size at fixed dimension");
    std::uint64_t sk = 2, sl = 2, sn = 1;
    std::string oracle;
    std::int64_t radius = 2;
    smin->add_option("--k", sk, "first set size")->required();
    smin->add_option("--l", sl, "second set size")->required();
    smin->add_option("--n", sn, "sumset dimension")->required();
    smin->add_option("--oracle", oracle, "cross-check: partition or grid")
        ->check(CLI::IsMember({"partition", "grid"}));
    smin->add_option("--radius", radius, "grid oracle coordinate radius")->capture_default_str();

    // verify
    auto* ver = app.add_subcommand("verify", "decide (k,l)-freeness of a matrix file");
    std::string vin, vmode = "cyclic";
    std::uint64_t vk = 2, vl = 2;
    thincirc::FreenessOptions vdefaults;
    std::uint64_t vbudget = vdefaults.budget, vnaive = vdefaults.naive_order_limit;
    ver->add_option("--input", vin, "matrix JSON file")->required();
    ver->add_option("--k", vk, "block rows")->required();
    ver->add_option("--l", vl, "block columns")->required();
    ver->add_option("--mode", vmode, "cyclic or integer sums")
        ->check(CLI::IsMember({"cyclic", "integer"}))
        ->capture_default_str();
    ver->add_option("--budget", vbudget, "intersection work limit (words)")
        ->capture_default_str();
    ver->add_option("--naive-limit", vnaive, "max order for the dense cross-check")
        ->capture_default_str();

    // construct
    auto* con = app.add_subcommand("construct", "randomized free-matrix construction");
    std::uint64_t cn = 0, ck = 2, cl = 2, cmax = 100, cseed = 0;
    double cscale = 1.0;
    std::uint64_t cbudget = vdefaults.budget;
    std::string cout_path;
    con->add_option("--n", cn, "order parameter (result is 2n x 2n)")->required();
    con->add_option("--k", ck, "block rows")->capture_default_str();
    con->add_option("--l", cl, "block columns")->capture_default_str();
    con->add_option("--scale", cscale, "density multiplier")->capture_default_str();
    con->add_option("--max-trials", cmax, "trial limit")->capture_default_str();
    con->add_option("--seed", cseed, "base seed")->capture_default_str();
    con->add_option("--budget", cbudget, "verifier work limit per trial")->capture_default_str();
    con->add_option("--out", cout_path, "output JSON path (default stdout)");

    // enum-rect
    auto* enr = app.add_subcommand("enum-rect", "enumerate rectangles / verify class bounds");
    std::uint64_t en = 2, ek = 2, el = 2;
    std::string everify, eformat = "text";
    bool eordered = false, eforce = false;
    enr->add_option("--n", en, "coordinate range [0,n)")->required();
    enr->add_option("--k", ek, "rows per rectangle")->capture_default_str();
    enr->add_option("--l", el, "columns per rectangle")->capture_default_str();
    enr->add_option("--verify", everify, "lemma1, lemma2, lemma3, or all")
        ->check(CLI::IsMember({"lemma1", "lemma2", "lemma3", "all"}));
    enr->add_option("--format", eformat, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    enr->add_flag("--ordered", eordered, "list all ordered tuples, not sorted representatives");
    enr->add_flag("--force", eforce, "override the enumeration size guard");

    // experiment
    auto* exp = app.add_subcommand("experiment", "sweeps and reports");
    exp->require_subcommand(1);
    auto* swp = exp->add_subcommand("sweep", "density sweep to CSV");
    std::string spec_path, sweep_out;
    swp->add_option("--spec", spec_path, "sweep spec JSON")->required();
    swp->add_option("--out", sweep_out, "output CSV path (default stdout)");
    auto* cor = exp->add_subcommand("corollary", "log-parameter weight bound report");
    std::uint64_t corn = 0;
    std::string corfmt = "text";
    cor->add_option("--n", corn, "matrix order")->required();
    cor->add_option("--format", corfmt, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (rho_cmd->parsed()) return run_rho(rk, rl);
        if (smin->parsed()) return run_sumset_min(sk, sl, sn, oracle, radius);
        if (ver->parsed()) return run_verify(vin, vk, vl, vmode, vbudget, vnaive);
        if (con->parsed())
            return run_construct(cn, ck, cl, cscale, cmax, cseed, cbudget, jobs, cout_path);
        if (enr->parsed()) return run_enum_rect(en, ek, el, everify, eformat, eordered, eforce, jobs);
        if (exp->parsed()) {
            if (swp->parsed()) return run_sweep(spec_path, sweep_out, jobs);
            if (cor->parsed()) return run_corollary(corn, corfmt);
        }
        std::cerr << "no subcommand\n";
        return kExitUsage;
    } catch (const thincirc::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "no result: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "bad input file: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}
