//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file harness.cpp
//---------------------------------------------------------------------------//
#include "rwmlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "rwmlab/diagnostics.hpp"
#include "rwmlab/diffusion.hpp"
#include "rwmlab/quadrature.hpp"
#include "rwmlab/theory.hpp"

namespace rwmlab
{
namespace
{
using json = nlohmann::json;

std::string num(double v)
{
    return fmt::format("{:.10g}", v);
}

std::string params_field(GSpec const& g)
{
    return fmt::format("{:.10g}", fmt::join(g.params, ";"));
}

template<class T>
std::vector<T> scalar_or_list(json const& j, char const* key, std::vector<T> fallback)
{
    if (!j.contains(key))
    {
        return fallback;
    }
    auto const& v = j.at(key);
    if (v.is_array())
    {
        return v.get<std::vector<T>>();
    }
    return {v.get<T>()};
}

//! Config columns shared by every table.
std::vector<std::string> config_fields(ExperimentConfig const& cfg)
{
    return {std::string(to_string(cfg.tag)),
            std::string(to_string(cfg.target.family)),
            params_field(cfg.target),
            std::string(to_string(cfg.target.support))};
}

KernelConfig kernel_for(ExperimentConfig const& cfg, Combination const& combo)
{
    KernelConfig k;
    k.l = combo.l;
    k.d = combo.d;
    k.kind = cfg.kind;
    k.c = combo.c;
    return k;
}

ChainState initial_state(ExperimentConfig const& cfg,
                         TargetDensity const& target,
                         std::size_t d,
                         Rng& rng)
{
    if (cfg.start == StartKind::uniform)
    {
        ChainState s(d, 0.0);
        for (auto& x : s.x)
        {
            x = rng.uniform_open();
        }
        return s;
    }
    return sample_iid(target, d, rng);
}

std::string describe_state(ChainState const& s, double l)
{
    std::ostringstream os;
    os << "d=" << s.dim() << " b_d^l="
       << boundary_count(s, l, l, s.dim()) << " x[0..]=(";
    for (std::size_t i = 0; i < std::min<std::size_t>(s.dim(), 8); ++i)
    {
        os << (i ? ", " : "") << s.x[i];
    }
    os << (s.dim() > 8 ? ", ...)" : ")");
    return os.str();
}

//---------------------------------------------------------------------------//
// Stationary-start runs: one task per (combination, chain).

std::vector<std::string> summary_row(ExperimentConfig const& cfg,
                                     Combination const& combo,
                                     std::string chain,
                                     RunSummary const& s)
{
    auto row = config_fields(cfg);
    row.insert(row.end(),
               {std::string(to_string(cfg.kind)), std::to_string(combo.d),
                num(combo.l), num(combo.c), std::move(chain),
                std::to_string(s.n_iters), num(s.accept_rate),
                num(s.esjd_scaled), num(s.iact_first), num(s.b_mean),
                num(s.b_var), num(s.p_d), num(s.omega_inv_mean),
                num(s.omega_inv_m2)});
    return row;
}

RunSummary run_kernel_chain(ExperimentConfig const& cfg,
                            TargetDensity const& target,
                            Combination const& combo,
                            std::uint64_t chain)
{
    KernelConfig kc = kernel_for(cfg, combo);
    Rng rng = Rng::for_chain(cfg.seed, combo.index, chain);
    Rng init = rng.split(0);
    ChainState s = initial_state(cfg, target, combo.d, init);
    StepWorkspace ws;
    std::uint64_t burn = cfg.burn_in_for(combo.d);
    for (std::uint64_t t = 0; t < burn; ++t)
    {
        kernel_update(target, kc, s, rng, ws);
    }
    RunAccumulator acc(combo.d, combo.l, target.support() == Support::unit);
    ChainState prev;
    for (std::uint64_t t = burn; t < cfg.n_iters; ++t)
    {
        prev.x.assign(s.x.begin(), s.x.end());
        bool accepted = kernel_update(target, kc, s, rng, ws);
        acc.record(prev, s, accepted);
    }
    return acc.summary();
}

RunSummary run_pseudo_chain(ExperimentConfig const& cfg,
                            TargetDensity const& target,
                            Combination const& combo,
                            std::uint64_t chain)
{
    KernelConfig kc = kernel_for(cfg, combo);
    Rng rng = Rng::for_chain(cfg.seed, combo.index, chain);
    Rng init = rng.split(0);
    ChainState s = initial_state(cfg, target, combo.d, init);
    StepWorkspace ws;
    bool unit = target.support() == Support::unit;

    std::uint64_t expanded = 0;
    double sq_jump = 0;
    double b_sum = 0;
    double b_sq = 0;
    double w_sum = 0;
    double w_sq = 0;
    ChainState prev;
    for (std::uint64_t j = 0; j < cfg.n_iters; ++j)
    {
        prev.x.assign(s.x.begin(), s.x.end());
        try
        {
            expanded += pseudo_rwm_update(target, kc, s, rng, ws);
        }
        catch (StuckStateError const& e)
        {
            std::cerr << "rwmlab: stuck state in combination " << combo.index
                      << " chain " << chain << ": "
                      << describe_state(e.state(), combo.l) << '\n';
            throw;
        }
        for (std::size_t i = 0; i < combo.d; ++i)
        {
            double dx = s.x[i] - prev.x[i];
            sq_jump += dx * dx;
        }
        auto b = static_cast<double>(boundary_count(s, combo.l, combo.l, combo.d));
        b_sum += b;
        b_sq += b * b;
        if (unit)
        {
            double w = omega_inv(s, combo.l, combo.d);
            w_sum += w;
            w_sq += w * w;
        }
    }
    RunSummary r;
    auto jumps = static_cast<double>(cfg.n_iters);
    r.n_iters = expanded;
    r.accept_rate = jumps / static_cast<double>(expanded);
    r.esjd_scaled = static_cast<double>(combo.d) * sq_jump
                    / static_cast<double>(expanded);
    r.iact_first = std::nan("");
    r.b_mean = b_sum / jumps;
    r.b_var = std::max(0.0, b_sq / jumps - r.b_mean * r.b_mean);
    r.p_d = std::nan("");
    r.omega_inv_mean = unit ? w_sum / jumps : std::nan("");
    r.omega_inv_m2 = unit ? w_sq / jumps : std::nan("");
    return r;
}

RunSummary mean_summary(std::vector<RunSummary> const& runs)
{
    RunSummary m;
    auto n = static_cast<double>(runs.size());
    for (auto const& r : runs)
    {
        m.n_iters += r.n_iters;
        m.accept_rate += r.accept_rate / n;
        m.esjd_scaled += r.esjd_scaled / n;
        m.iact_first += r.iact_first / n;
        m.b_mean += r.b_mean / n;
        m.b_var += r.b_var / n;
        m.p_d += r.p_d / n;
        m.omega_inv_mean += r.omega_inv_mean / n;
        m.omega_inv_m2 += r.omega_inv_m2 / n;
    }
    return m;
}

CsvTable run_summaries(ExperimentConfig const& cfg, TargetDensity const& target)
{
    auto combos = cfg.combinations();
    std::size_t n_chains = cfg.n_chains;
    std::vector<RunSummary> results(combos.size() * n_chains);
    bool pseudo = cfg.tag == ExperimentTag::pseudo
                  || cfg.kind == KernelKind::pseudo;
    parallel_for(results.size(),
                 worker_count(cfg.threads, results.size()),
                 [&](std::size_t task) {
                     auto const& combo = combos[task / n_chains];
                     std::uint64_t chain = task % n_chains;
                     results[task]
                         = pseudo ? run_pseudo_chain(cfg, target, combo, chain)
                                  : run_kernel_chain(cfg, target, combo, chain);
                 });

    CsvTable table;
    table.header = summary_columns();
    for (std::size_t ci = 0; ci < combos.size(); ++ci)
    {
        std::vector<RunSummary> group(results.begin() + ci * n_chains,
                                      results.begin() + (ci + 1) * n_chains);
        for (std::size_t ch = 0; ch < n_chains; ++ch)
        {
            table.rows.push_back(
                summary_row(cfg, combos[ci], std::to_string(ch), group[ch]));
        }
        table.rows.push_back(
            summary_row(cfg, combos[ci], "all", mean_summary(group)));
    }
    return table;
}

//---------------------------------------------------------------------------//
CsvTable run_theory(ExperimentConfig const& cfg, TargetDensity const& target)
{
    CsvTable table;
    table.header = {"tag",   "family", "params",        "support",
                    "l",     "fstar",  "c",             "phi",
                    "aoar",  "l_opt",  "aoar_at_l_opt", "phi_at_l_opt"};
    double fstar = target.fstar();
    auto fixed = [](double v) { return fmt::format("{:.6f}", v); };
    for (double l : cfg.l)
    {
        for (double c : cfg.c)
        {
            auto at = predict_scaling(l, fstar, target.support(), c);
            auto opt = predict_scaling(at.l_opt, fstar, target.support(), c);
            auto row = config_fields(cfg);
            row.insert(row.end(),
                       {fixed(l), fixed(fstar), fixed(c), fixed(at.phi),
                        fixed(at.aoar), fixed(at.l_opt), fixed(opt.aoar),
                        fixed(opt.phi)});
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

//---------------------------------------------------------------------------//
CsvTable run_coupling(ExperimentConfig const& cfg, TargetDensity const& target)
{
    auto combos = cfg.combinations();
    std::size_t n_chains = cfg.n_chains;
    struct Counts
    {
        std::uint64_t coupled{0};
        std::uint64_t decouplings{0};
    };
    std::vector<Counts> results(combos.size() * n_chains);
    parallel_for(results.size(),
                 worker_count(cfg.threads, results.size()),
                 [&](std::size_t task) {
                     auto const& combo = combos[task / n_chains];
                     KernelConfig kc = kernel_for(cfg, combo);
                     Rng rng = Rng::for_chain(cfg.seed, combo.index,
                                              task % n_chains);
                     Rng init = rng.split(0);
                     ChainState x = initial_state(cfg, target, combo.d, init);
                     ChainState w = x;
                     StepWorkspace ws;
                     Counts c;
                     for (std::uint64_t t = 0; t < cfg.n_iters; ++t)
                     {
                         c.coupled += (x == w) ? 1 : 0;
                         if (coupled_update(target, kc, x, w, rng, ws))
                         {
                             ++c.decouplings;
                             w = x;  // re-couple from the RWM state
                         }
                     }
                     results[task] = c;
                 });

    CsvTable table;
    table.header = {"tag", "family", "params", "support", "kind", "d", "l",
                    "c", "chain", "n_steps", "coupled_steps", "decouplings",
                    "decouple_freq"};
    for (std::size_t ci = 0; ci < combos.size(); ++ci)
    {
        Counts total;
        auto emit = [&](std::string chain, Counts const& k, std::uint64_t steps) {
            auto row = config_fields(cfg);
            row.insert(row.end(),
                       {"rwm-rwh", std::to_string(combos[ci].d),
                        num(combos[ci].l), num(combos[ci].c), std::move(chain),
                        std::to_string(steps), std::to_string(k.coupled),
                        std::to_string(k.decouplings),
                        num(static_cast<double>(k.decouplings)
                            / static_cast<double>(std::max<std::uint64_t>(k.coupled, 1)))});
            table.rows.push_back(std::move(row));
        };
        for (std::size_t ch = 0; ch < n_chains; ++ch)
        {
            auto const& k = results[ci * n_chains + ch];
            total.coupled += k.coupled;
            total.decouplings += k.decouplings;
            emit(std::to_string(ch), k, cfg.n_iters);
        }
        emit("all", total, cfg.n_iters * n_chains);
    }
    return table;
}

//---------------------------------------------------------------------------//
CsvTable run_diffusion(ExperimentConfig const& cfg, TargetDensity const& target)
{
    auto combos = cfg.combinations();
    std::size_t n_chains = cfg.n_chains;
    std::vector<std::vector<AutocorrComparison>> results(combos.size() * n_chains);
    parallel_for(results.size(),
                 worker_count(cfg.threads, results.size()),
                 [&](std::size_t task) {
                     auto const& combo = combos[task / n_chains];
                     KernelConfig kc = kernel_for(cfg, combo);
                     kc.kind = KernelKind::rwm;
                     Rng rng = Rng::for_chain(cfg.seed, combo.index,
                                              task % n_chains);
                     Rng init = rng.split(0);
                     ChainState s = initial_state(cfg, target, combo.d, init);
                     StepWorkspace ws;
                     std::uint64_t burn = cfg.burn_in_for(combo.d);
                     for (std::uint64_t t = 0; t < burn; ++t)
                     {
                         rwm_update(target, kc, s, rng, ws);
                     }
                     std::vector<double> series;
                     series.reserve(cfg.n_iters - burn);
                     for (std::uint64_t t = burn; t < cfg.n_iters; ++t)
                     {
                         rwm_update(target, kc, s, rng, ws);
                         series.push_back(s.x[0]);
                     }
                     Rng ref = rng.split(1);
                     results[task] = chain_vs_diffusion_autocorr(
                         series, combo.d, combo.l, target, cfg.t_grid, ref);
                 });

    CsvTable table;
    table.header = {"tag", "family", "params", "support", "kind", "d", "l",
                    "chain", "t", "lag", "chain_rho", "diffusion_rho"};
    for (std::size_t ci = 0; ci < combos.size(); ++ci)
    {
        auto const& combo = combos[ci];
        auto emit = [&](std::string chain, AutocorrComparison const& a) {
            auto row = config_fields(cfg);
            row.insert(row.end(),
                       {"rwm", std::to_string(combo.d), num(combo.l),
                        std::move(chain), num(a.t), std::to_string(a.lag),
                        num(a.chain_rho), num(a.diffusion_rho)});
            table.rows.push_back(std::move(row));
        };
        for (std::size_t ch = 0; ch < n_chains; ++ch)
        {
            for (auto const& a : results[ci * n_chains + ch])
            {
                emit(std::to_string(ch), a);
            }
        }
        for (std::size_t ti = 0; ti < cfg.t_grid.size(); ++ti)
        {
            AutocorrComparison mean = results[ci * n_chains][ti];
            mean.chain_rho = 0;
            for (std::size_t ch = 0; ch < n_chains; ++ch)
            {
                mean.chain_rho += results[ci * n_chains + ch][ti].chain_rho
                                  / static_cast<double>(n_chains);
            }
            emit("all", mean);
        }
    }
    return table;
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
std::string_view to_string(ExperimentTag t)
{
    switch (t)
    {
        case ExperimentTag::simulate:
            return "simulate";
        case ExperimentTag::sweep:
            return "sweep";
        case ExperimentTag::theory:
            return "theory";
        case ExperimentTag::diffusion:
            return "diffusion";
        case ExperimentTag::coupling:
            return "coupling";
        case ExperimentTag::pseudo:
            return "pseudo";
    }
    return "?";
}

ExperimentTag experiment_tag_from_string(std::string_view name)
{
    for (auto t : {ExperimentTag::simulate, ExperimentTag::sweep,
                   ExperimentTag::theory, ExperimentTag::diffusion,
                   ExperimentTag::coupling, ExperimentTag::pseudo})
    {
        if (name == to_string(t))
        {
            return t;
        }
    }
    throw std::invalid_argument("unknown experiment tag '" + std::string(name)
                                + "'");
}

//---------------------------------------------------------------------------//
ExperimentConfig ExperimentConfig::from_json(json const& j)
{
    ExperimentConfig cfg;
    try
    {
        if (j.contains("tag"))
        {
            cfg.tag = experiment_tag_from_string(j.at("tag").get<std::string>());
        }
        if (j.contains("target"))
        {
            auto const& t = j.at("target");
            cfg.target.family
                = family_from_string(t.value("family", std::string("uniform")));
            cfg.target.params = t.value("params", std::vector<double>{});
            cfg.target.support
                = support_from_string(t.value("support", std::string("unit")));
        }
        if (j.contains("kernel"))
        {
            cfg.kind = kernel_kind_from_string(j.at("kernel").get<std::string>());
        }
        else if (cfg.tag == ExperimentTag::pseudo)
        {
            cfg.kind = KernelKind::pseudo;
        }
        cfg.d = scalar_or_list<std::size_t>(j, "d", cfg.d);
        cfg.l = scalar_or_list<double>(j, "l", cfg.l);
        cfg.c = scalar_or_list<double>(j, "c", cfg.c);
        cfg.n_iters = j.value("n_iters", cfg.n_iters);
        cfg.n_chains = j.value("n_chains", cfg.n_chains);
        if (j.contains("burn_in"))
        {
            cfg.burn_in = j.at("burn_in").get<std::uint64_t>();
        }
        cfg.seed = j.value("seed", cfg.seed);
        cfg.output = j.value("output", cfg.output);
        auto start = j.value("start", std::string("stationary"));
        if (start == "uniform")
        {
            cfg.start = StartKind::uniform;
        }
        else if (start != "stationary")
        {
            throw std::invalid_argument("start must be 'stationary' or 'uniform'");
        }
        auto monitor = j.value("monitor", std::string("mean"));
        if (monitor == "variance")
        {
            cfg.monitor = MonitorKind::variance;
        }
        else if (monitor != "mean")
        {
            throw std::invalid_argument("monitor must be 'mean' or 'variance'");
        }
        cfg.t_grid = scalar_or_list<double>(j, "t_grid", cfg.t_grid);
        cfg.threads = j.value("threads", cfg.threads);
    }
    catch (json::exception const& e)
    {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw std::invalid_argument("cannot open config file " + path.string());
    }
    json j;
    try
    {
        in >> j;
    }
    catch (json::exception const& e)
    {
        throw std::invalid_argument("config " + path.string() + ": " + e.what());
    }
    return from_json(j);
}

json ExperimentConfig::to_json() const
{
    json j;
    j["tag"] = std::string(to_string(tag));
    j["target"] = {{"family", std::string(to_string(target.family))},
                   {"params", target.params},
                   {"support", std::string(to_string(target.support))}};
    j["kernel"] = std::string(to_string(kind));
    j["d"] = d;
    j["l"] = l;
    j["c"] = c;
    j["n_iters"] = n_iters;
    j["n_chains"] = n_chains;
    if (burn_in)
    {
        j["burn_in"] = *burn_in;
    }
    j["seed"] = seed;
    j["output"] = output;
    j["start"] = start == StartKind::uniform ? "uniform" : "stationary";
    j["monitor"] = monitor == MonitorKind::variance ? "variance" : "mean";
    j["t_grid"] = t_grid;
    j["threads"] = threads;
    return j;
}

std::vector<Combination> ExperimentConfig::combinations() const
{
    std::vector<Combination> out;
    for (auto dd : d)
    {
        for (double ll : l)
        {
            for (double cc : c)
            {
                out.push_back({out.size(), dd, ll, cc});
            }
        }
    }
    return out;
}

std::uint64_t ExperimentConfig::burn_in_for(std::size_t dim) const
{
    if (burn_in)
    {
        return *burn_in;
    }
    return start == StartKind::uniform ? 10 * dim * dim : 0;
}

void ExperimentConfig::validate() const
{
    normalize(target);
    if (l.empty() || c.empty())
    {
        throw std::invalid_argument("config: l and c lists must be non-empty");
    }
    if (tag == ExperimentTag::theory)
    {
        for (double cc : c)
        {
            if (!(cc > 0 && cc <= 1))
            {
                throw std::invalid_argument("config: c must lie in (0, 1]");
            }
        }
        for (double ll : l)
        {
            if (!(ll > 0))
            {
                throw std::invalid_argument("config: l must be positive");
            }
        }
        return;
    }
    if (d.empty())
    {
        throw std::invalid_argument("config: d list must be non-empty");
    }
    if (n_chains < 1)
    {
        throw std::invalid_argument("config: n_chains must be >= 1");
    }
    bool pseudo = tag == ExperimentTag::pseudo || kind == KernelKind::pseudo;
    if (tag == ExperimentTag::simulate || tag == ExperimentTag::sweep
        || tag == ExperimentTag::diffusion)
    {
        if (pseudo && tag != ExperimentTag::simulate && tag != ExperimentTag::sweep)
        {
            throw std::invalid_argument("config: diffusion runs need an rwm kernel");
        }
    }
    if ((kind == KernelKind::rwh || tag == ExperimentTag::coupling)
        && target.support != Support::unit)
    {
        throw std::invalid_argument(
            "config: the hypercube walk needs unit-interval support");
    }
    if (start == StartKind::uniform && target.support != Support::unit)
    {
        throw std::invalid_argument(
            "config: uniform starts need unit-interval support");
    }
    if (start == StartKind::uniform && kind != KernelKind::rwm
        && (tag == ExperimentTag::simulate || tag == ExperimentTag::sweep))
    {
        throw std::invalid_argument("config: uniform starts use the rwm kernel");
    }
    for (auto const& combo : combinations())
    {
        KernelConfig k;
        k.l = combo.l;
        k.d = combo.d;
        k.kind = pseudo ? KernelKind::rwm : kind;
        k.c = combo.c;
        k.validate();
        std::uint64_t burn = burn_in_for(combo.d);
        bool tracks_stats = !pseudo && tag != ExperimentTag::coupling
                            && start == StartKind::stationary;
        if (tracks_stats && !(n_iters > burn))
        {
            throw std::invalid_argument("config: n_iters must exceed burn_in");
        }
        if (n_iters == 0)
        {
            throw std::invalid_argument("config: n_iters must be positive");
        }
    }
    if (tag == ExperimentTag::diffusion)
    {
        for (double t : t_grid)
        {
            if (!(t >= 0))
            {
                throw std::invalid_argument("config: t_grid entries must be >= 0");
            }
        }
    }
}

//---------------------------------------------------------------------------//
std::size_t CsvTable::column(std::string_view name) const
{
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
    {
        throw std::out_of_range("no CSV column '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
}

std::string CsvTable::to_string() const
{
    std::string out = fmt::format("{}\n", fmt::join(header, ","));
    for (auto const& r : rows)
    {
        out += fmt::format("{}\n", fmt::join(r, ","));
    }
    return out;
}

void CsvTable::write(std::filesystem::path const& path) const
{
    if (path.has_parent_path())
    {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << to_string();
}

std::vector<std::string> const& summary_columns()
{
    static std::vector<std::string> const cols{
        "tag",          "family",      "params",     "support",
        "kind",         "d",           "l",          "c",
        "chain",        "n_iters",     "accept_rate", "esjd_scaled",
        "iact_first",   "b_mean",      "b_var",      "p_d",
        "omega_inv_mean", "omega_inv_m2"};
    return cols;
}

//---------------------------------------------------------------------------//
ExperimentResult uniform_start_experiment(ExperimentConfig const& config)
{
    config.validate();
    if (config.target.support != Support::unit || config.kind != KernelKind::rwm)
    {
        throw std::invalid_argument(
            "uniform_start_experiment: needs rwm on the unit interval");
    }
    ExperimentConfig cfg = config;
    cfg.start = StartKind::uniform;
    TargetDensity target = normalize(cfg.target);
    auto combos = cfg.combinations();

    // Stationary value of the monitored statistic and the single-coordinate
    // spread; the band is 2 standard errors of the coordinate average over
    // all chains.
    double stat_value = 0;
    double coord_sd = 0;
    if (cfg.monitor == MonitorKind::mean)
    {
        stat_value = target.mean();
        coord_sd = std::sqrt(target.variance());
    }
    else
    {
        double mu = target.mean();
        double m4 = integrate_simpson(
            [&](double x) {
                double u = x - mu;
                return u * u * u * u * target.density(x);
            },
            0.0, 1.0, 1e-12);
        stat_value = target.variance();
        coord_sd = std::sqrt(std::max(0.0, m4 - stat_value * stat_value));
    }

    struct Outcome
    {
        double first_esjd{0};
        long long stabilization{-1};
        double band{0};
        std::uint64_t iters{0};
        std::vector<std::pair<std::uint64_t, double>> trace;
    };
    std::vector<Outcome> outcomes(combos.size());

    parallel_for(combos.size(), worker_count(cfg.threads, combos.size()),
                 [&](std::size_t ci) {
        auto const& combo = combos[ci];
        KernelConfig kc = kernel_for(cfg, combo);
        std::size_t d = combo.d;
        double sd_stat = d > 1 ? static_cast<double>(d - 1) / static_cast<double>(d)
                               : 1.0;
        double target_value = cfg.monitor == MonitorKind::mean
                                  ? stat_value
                                  : stat_value * sd_stat;

        double band = 2 * coord_sd
                      / std::sqrt(static_cast<double>(cfg.n_chains * d));

        std::vector<Rng> rngs;
        std::vector<ChainState> states;
        StepWorkspace ws;
        Outcome out;
        constexpr int fresh_steps = 1000;
        double first_sum = 0;
        for (std::uint64_t ch = 0; ch < cfg.n_chains; ++ch)
        {
            Rng rng = Rng::for_chain(cfg.seed, combo.index, ch);
            Rng init = rng.split(0);
            ChainState s = initial_state(cfg, target, d, init);
            // First transition from X_0, averaged over fresh proposals.
            Rng probe = rng.split(1);
            for (int k = 0; k < fresh_steps; ++k)
            {
                ChainState y = s;
                if (rwm_update(target, kc, y, probe, ws))
                {
                    double sq = 0;
                    for (std::size_t i = 0; i < d; ++i)
                    {
                        double dx = y.x[i] - s.x[i];
                        sq += dx * dx;
                    }
                    first_sum += static_cast<double>(d) * sq;
                }
            }
            rngs.push_back(rng);
            states.push_back(std::move(s));
        }
        out.first_esjd = first_sum
                         / static_cast<double>(cfg.n_chains * fresh_steps);

        auto statistic = [&]() {
            double acc = 0;
            for (auto const& s : states)
            {
                double m = 0;
                for (double x : s.x)
                {
                    m += x;
                }
                m /= static_cast<double>(d);
                if (cfg.monitor == MonitorKind::mean)
                {
                    acc += m;
                    continue;
                }
                double v = 0;
                for (double x : s.x)
                {
                    v += (x - m) * (x - m);
                }
                acc += v / static_cast<double>(d);
            }
            return acc / static_cast<double>(states.size());
        };

        auto window = static_cast<std::uint64_t>(
            std::max<double>(1, std::ceil(static_cast<double>(d * d) / 100)));
        std::uint64_t t = 0;
        int run = 0;
        std::uint64_t run_start = 0;
        out.trace.emplace_back(0, statistic());
        while (t < cfg.n_iters)
        {
            std::uint64_t steps = std::min(window, cfg.n_iters - t);
            for (std::size_t ch = 0; ch < states.size(); ++ch)
            {
                for (std::uint64_t k = 0; k < steps; ++k)
                {
                    rwm_update(target, kc, states[ch], rngs[ch], ws);
                }
            }
            t += steps;
            double v = statistic();
            out.trace.emplace_back(t, v);
            if (std::fabs(v - target_value) <= band)
            {
                if (run++ == 0)
                {
                    run_start = t;
                }
                if (run == 3)
                {
                    out.stabilization = static_cast<long long>(run_start);
                    break;
                }
            }
            else
            {
                run = 0;
            }
        }
        out.iters = t;
        out.band = band;
        outcomes[ci] = std::move(out);
    });

    ExperimentResult result;
    result.table.header = {"tag", "family", "params", "support", "kind", "d",
                           "l", "c", "n_chains", "iters_run", "first_esjd_scaled",
                           "stabilization_iter", "stationary_value", "band"};
    CsvTable trace;
    trace.header = {"d", "l", "c", "iter", "monitored"};
    for (std::size_t ci = 0; ci < combos.size(); ++ci)
    {
        auto const& combo = combos[ci];
        auto const& o = outcomes[ci];
        auto row = config_fields(cfg);
        row.insert(row.end(),
                   {"rwm", std::to_string(combo.d), num(combo.l), num(combo.c),
                    std::to_string(cfg.n_chains), std::to_string(o.iters),
                    num(o.first_esjd), std::to_string(o.stabilization),
                    num(stat_value), num(o.band)});
        result.table.rows.push_back(std::move(row));
        for (auto const& [it, v] : o.trace)
        {
            trace.rows.push_back({std::to_string(combo.d), num(combo.l),
                                  num(combo.c), std::to_string(it), num(v)});
        }
    }
    result.trace = std::move(trace);
    return result;
}

//---------------------------------------------------------------------------//
ExperimentResult execute_experiment(ExperimentConfig const& config)
{
    config.validate();
    if (config.start == StartKind::uniform
        && (config.tag == ExperimentTag::simulate
            || config.tag == ExperimentTag::sweep))
    {
        return uniform_start_experiment(config);
    }
    TargetDensity target = normalize(config.target);
    ExperimentResult result;
    switch (config.tag)
    {
        case ExperimentTag::simulate:
        case ExperimentTag::sweep:
        case ExperimentTag::pseudo:
            result.table = run_summaries(config, target);
            break;
        case ExperimentTag::theory:
            result.table = run_theory(config, target);
            break;
        case ExperimentTag::coupling:
            result.table = run_coupling(config, target);
            break;
        case ExperimentTag::diffusion:
            result.table = run_diffusion(config, target);
            break;
    }
    return result;
}

std::vector<std::filesystem::path>
run_experiment(ExperimentConfig const& config,
               std::filesystem::path const& out_dir)
{
    auto result = execute_experiment(config);
    std::filesystem::path name = config.output.empty()
                                     ? std::string(to_string(config.tag)) + ".csv"
                                     : config.output;
    std::filesystem::path main = out_dir.empty() ? name : out_dir / name;
    std::vector<std::filesystem::path> written{main};
    result.table.write(main);
    if (result.trace)
    {
        auto trace_path = main;
        trace_path.replace_filename(main.stem().string() + "_trace.csv");
        result.trace->write(trace_path);
        written.push_back(trace_path);
    }
    return written;
}

//---------------------------------------------------------------------------//
std::size_t worker_count(std::size_t requested, std::size_t n_tasks)
{
    std::size_t n = requested ? requested
                              : std::max(1u, std::thread::hardware_concurrency());
    if (char const* env = std::getenv("RWM_THREADS"))
    {
        char* end = nullptr;
        unsigned long cap = std::strtoul(env, &end, 10);
        if (end != env && cap > 0)
        {
            n = std::min<std::size_t>(n, cap);
        }
    }
    return std::max<std::size_t>(1, std::min(n, n_tasks));
}

void parallel_for(std::size_t n,
                  std::size_t workers,
                  std::function<void(std::size_t)> const& task)
{
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++)
        {
            try
            {
                task(i);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                {
                    failure = std::current_exception();
                }
                next = n;
            }
        }
    };
    if (workers <= 1)
    {
        work();
    }
    else
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
        {
            pool.emplace_back(work);
        }
    }
    if (failure)
    {
        std::rethrow_exception(failure);
    }
}

//---------------------------------------------------------------------------//
}  // namespace rwmlab
