//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 rwmlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file bindings.cpp
//! Python bindings for the rwmlab core.
//---------------------------------------------------------------------------//
#include <nlohmann/json.hpp>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rwmlab/diagnostics.hpp"
#include "rwmlab/diffusion.hpp"
#include "rwmlab/harness.hpp"
#include "rwmlab/kernels.hpp"
#include "rwmlab/rng.hpp"
#include "rwmlab/target_model.hpp"
#include "rwmlab/theory.hpp"

namespace py = pybind11;
using namespace rwmlab;

namespace
{
ChainState to_state(std::vector<double> x)
{
    return ChainState(std::move(x));
}
}  // namespace

PYBIND11_MODULE(_rwmlab, m)
{
    m.doc() = "Random-walk Metropolis on targets with discontinuous support";

    py::register_exception<InvalidTarget>(m, "InvalidTarget", PyExc_ValueError);
    py::register_exception<StuckStateError>(m, "StuckStateError", PyExc_RuntimeError);

    py::enum_<Family>(m, "Family")
        .value("uniform", Family::uniform)
        .value("linear", Family::linear)
        .value("quadratic", Family::quadratic)
        .value("polynomial", Family::polynomial);
    py::enum_<Support>(m, "Support")
        .value("unit", Support::unit)
        .value("halfline", Support::halfline);
    py::enum_<KernelKind>(m, "KernelKind")
        .value("rwm", KernelKind::rwm)
        .value("mwg", KernelKind::mwg)
        .value("rwh", KernelKind::rwh)
        .value("pseudo", KernelKind::pseudo);

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"),
             py::arg("stream") = 0)
        .def_static("for_chain", &Rng::for_chain)
        .def("split", &Rng::split)
        .def("next", [](Rng& r) { return r(); })
        .def("uniform01", &Rng::uniform01)
        .def("discard", &Rng::discard)
        .def_property_readonly("position", &Rng::position);

    py::class_<GSpec>(m, "GSpec")
        .def(py::init([](Family f, std::vector<double> p, Support s) {
                 return GSpec{f, std::move(p), s};
             }),
             py::arg("family") = Family::uniform,
             py::arg("params") = std::vector<double>{},
             py::arg("support") = Support::unit)
        .def_static("uniform", &GSpec::uniform)
        .def_static("linear", &GSpec::linear, py::arg("theta"),
                    py::arg("support") = Support::unit)
        .def_static("quadratic", &GSpec::quadratic)
        .def_static("polynomial", &GSpec::polynomial, py::arg("coeffs"),
                    py::arg("support") = Support::unit)
        .def_readwrite("family", &GSpec::family)
        .def_readwrite("params", &GSpec::params)
        .def_readwrite("support", &GSpec::support)
        .def("g", &GSpec::g)
        .def("gprime", &GSpec::gprime);

    py::class_<TargetDensity>(m, "TargetDensity")
        .def_property_readonly("normalizer", &TargetDensity::normalizer)
        .def_property_readonly("fstar", &TargetDensity::fstar)
        .def_property_readonly("gstar", &TargetDensity::gstar)
        .def_property_readonly("e_gprime_sq", &TargetDensity::e_gprime_sq)
        .def_property_readonly("mean", &TargetDensity::mean)
        .def_property_readonly("variance", &TargetDensity::variance)
        .def_property_readonly("support", &TargetDensity::support)
        .def("density", &TargetDensity::density)
        .def("cdf", &TargetDensity::cdf)
        .def("quantile", &TargetDensity::quantile)
        .def("sample", &TargetDensity::sample);
    m.def("normalize", &normalize);
    m.def("sample_iid", [](TargetDensity const& t, std::size_t d, Rng& rng) {
        return sample_iid(t, d, rng).x;
    });
    m.def("log_density_ratio", [](TargetDensity const& t, std::vector<double> x,
                                  std::vector<double> y) {
        return log_density_ratio(t, to_state(std::move(x)), to_state(std::move(y)));
    });

    py::class_<KernelConfig>(m, "KernelConfig")
        .def(py::init([](double l, std::size_t d, KernelKind kind, double c) {
                 KernelConfig k{l, d, kind, c};
                 k.validate();
                 return k;
             }),
             py::arg("l"), py::arg("d"), py::arg("kind") = KernelKind::rwm,
             py::arg("c") = 1.0)
        .def_readonly("l", &KernelConfig::l)
        .def_readonly("d", &KernelConfig::d)
        .def_readonly("kind", &KernelConfig::kind)
        .def_readonly("c", &KernelConfig::c)
        .def_property_readonly("sigma", &KernelConfig::sigma)
        .def_property_readonly("block_size", &KernelConfig::block_size);

    auto step_result = [](Transition t) {
        return py::make_tuple(std::move(t.state.x), t.accepted);
    };
    m.def("rwm_step", [=](TargetDensity const& t, KernelConfig const& k,
                          std::vector<double> x, Rng& rng) {
        return step_result(rwm_step(t, k, to_state(std::move(x)), rng));
    });
    m.def("mwg_step", [=](TargetDensity const& t, KernelConfig const& k,
                          std::vector<double> x, Rng& rng) {
        return step_result(mwg_step(t, k, to_state(std::move(x)), rng));
    });
    m.def("rwh_step", [=](KernelConfig const& k, std::vector<double> x, Rng& rng) {
        return step_result(rwh_step(k, to_state(std::move(x)), rng));
    });
    m.def("pseudo_rwm_step", [](TargetDensity const& t, KernelConfig const& k,
                                std::vector<double> x, Rng& rng) {
        auto s = pseudo_rwm_step(t, k, to_state(std::move(x)), rng);
        return py::make_tuple(std::move(s.state.x), s.holding);
    });
    m.def("couple_geometrics", &couple_geometrics);

    m.def("phi", &phi);
    m.def("aoar", &aoar);
    m.def("optimal_l", &optimal_l);
    m.def("phi_halfline", &phi_halfline);
    m.def("aoar_halfline", &aoar_halfline);
    m.def("optimal_l_halfline", &optimal_l_halfline);
    m.def("phi_mwg", &phi_mwg);
    m.def("aoar_mwg", &aoar_mwg);
    m.def("optimal_l_mwg", &optimal_l_mwg);
    m.def("lambda_intensity", &lambda_intensity);
    m.def("omega_inv_moment_limits", &omega_inv_moment_limits);
    m.def("esjd_limit_boundary_only",
          [](double l, double lower, double upper, std::size_t n_mc, Rng& rng) {
              auto e = esjd_limit_interior(
                  l, InteriorDiscontinuitySpec::boundary_only(lower, upper),
                  n_mc, rng);
              return py::make_tuple(e.value, e.std_error);
          });

    m.def("boundary_count", [](std::vector<double> x, double r, double l) {
        auto s = to_state(std::move(x));
        return boundary_count(s, r, l, s.dim());
    });
    m.def("omega_inv", [](std::vector<double> x, double l) {
        auto s = to_state(std::move(x));
        return omega_inv(s, l, s.dim());
    });
    m.def("uniform_accept_oracle", [](std::vector<double> x, double l) {
        auto s = to_state(std::move(x));
        return uniform_accept_oracle(s, l, s.dim());
    });
    m.def("autocorrelation", [](std::vector<double> v, std::size_t max_lag) {
        return autocorrelation(v, max_lag);
    });
    m.def("iact", [](std::vector<double> v, std::size_t max_lag) {
        return iact(v, max_lag);
    });
    m.def("reflected_bm_autocorr", &reflected_bm_autocorr);

    m.def("run_experiment", [](std::string const& config_json,
                               std::filesystem::path const& out_dir) {
        auto cfg = ExperimentConfig::from_json(nlohmann::json::parse(config_json));
        py::gil_scoped_release release;
        return run_experiment(cfg, out_dir);
    });
    m.def("execute_experiment", [](std::string const& config_json) {
        auto cfg = ExperimentConfig::from_json(nlohmann::json::parse(config_json));
        ExperimentResult r;
        {
            py::gil_scoped_release release;
            r = execute_experiment(cfg);
        }
        return r.table.to_string();
    });
}
