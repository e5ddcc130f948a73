#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "predictorlab/asymptotics.hpp"
#include "predictorlab/cli.hpp"
#include "predictorlab/coeffs.hpp"
#include "predictorlab/errors.hpp"
#include "predictorlab/explicit.hpp"
#include "predictorlab/levinson.hpp"
#include "predictorlab/model.hpp"

#include <sstream>

namespace py = pybind11;
using namespace predictorlab;

namespace {

TruncationPolicy make_policy(std::size_t V, std::size_t K, double tol_term, const std::string& strategy,
                             double tol_tail) {
    TruncationPolicy p;
    p.V = V;
    p.K = K;
    p.tol_term = tol_term;
    p.tol_tail = tol_tail;
    if (strategy == "richardson") {
        p.tail_strategy = TailStrategy::RichardsonDouble;
    } else if (strategy != "integral") {
        throw ArgumentError("strategy must be 'integral' or 'richardson'");
    }
    return p;
}

py::dict explicit_result_dict(const ExplicitResult& r) {
    py::dict d;
    d["coefficients"] = r.table.coefficients;
    d["V"] = r.V;
    d["k_used"] = r.k_used;
    d["converged"] = r.converged;
    d["inner_tail_estimate"] = r.inner_tail_estimate;
    py::list terms;
    for (const auto& s : r.series) terms.append(s.terms);
    d["terms"] = terms;
    d["warnings"] = r.warnings;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite-past predictor coefficients: explicit series and Durbin-Levinson";

    static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
    static py::exception<ArgumentError> arg_exc(m, "ArgumentError", base.ptr());
    static py::exception<ModelError> model_exc(m, "ModelError", base.ptr());
    static py::exception<RegimeError> regime_exc(m, "RegimeError", base.ptr());
    static py::exception<TruncationError> trunc_exc(m, "TruncationError", base.ptr());
    static py::exception<DegeneracyError> degen_exc(m, "DegeneracyError", base.ptr());
    static py::exception<DisagreementError> disagree_exc(m, "DisagreementError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ArgumentError& e) {
            py::set_error(arg_exc, e.what());
        } catch (const ModelError& e) {
            py::set_error(model_exc, e.what());
        } catch (const RegimeError& e) {
            py::set_error(regime_exc, e.what());
        } catch (const TruncationError& e) {
            py::set_error(trunc_exc, e.what());
        } catch (const DegeneracyError& e) {
            py::set_error(degen_exc, e.what());
        } catch (const DisagreementError& e) {
            py::set_error(disagree_exc, e.what());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    py::class_<ProcessModel>(m, "ProcessModel")
        .def_static("farima", [](double d, std::vector<double> ar, std::vector<double> ma) {
            return ProcessModel::farima(d, RealPolynomial(std::move(ar)), RealPolynomial(std::move(ma)));
        }, py::arg("d"), py::arg("ar") = std::vector<double>{1.0}, py::arg("ma") = std::vector<double>{1.0})
        .def_static("fractional_noise", &ProcessModel::fractional_noise, py::arg("d"))
        .def_static("ar1", &ProcessModel::ar1, py::arg("r"))
        .def_static("white_noise", &ProcessModel::white_noise)
        .def_static("explicit", &ProcessModel::explicit_coefficients, py::arg("c"), py::arg("a"))
        .def_property_readonly("regime", [](const ProcessModel& p) { return to_string(p.regime()); })
        .def_property_readonly("d", &ProcessModel::memory_parameter)
        .def("__repr__", &ProcessModel::describe);

    m.def("expand_ma", [](const ProcessModel& p, std::size_t N) { return expand_ma(p, N).values; },
          py::arg("model"), py::arg("N"));
    m.def("expand_ar", [](const ProcessModel& p, std::size_t N) { return expand_ar(p, N).values; },
          py::arg("model"), py::arg("N"));
    m.def("autocov", [](const ProcessModel& p, std::size_t N, std::size_t M, double tol) {
        const AutocovSeq g = M == 0 ? autocov(p, N) : autocov(p, N, M, tol);
        return std::vector<double>(g.values().begin(), g.values().end());
    }, py::arg("model"), py::arg("N"), py::arg("M") = 0, py::arg("tol") = 1e-9);
    m.def("infinite_predictor", [](const ProcessModel& p, std::size_t N) {
        return infinite_predictor(expand_ma(p, N), expand_ar(p, N), N).values;
    }, py::arg("model"), py::arg("N"));
    m.def("tail_sum_phi", [](const ProcessModel& p, std::size_t n, std::size_t N, bool absolute) {
        const InfinitePredictor phi = infinite_predictor(expand_ma(p, N), expand_ar(p, N), N);
        return tail_sum_phi(phi, n, absolute ? TailSum::Absolute : TailSum::Signed);
    }, py::arg("model"), py::arg("n"), py::arg("N") = std::size_t{1} << 16, py::arg("absolute") = true);

    m.def("durbin_levinson", [](const std::vector<double>& gamma, std::size_t n) {
        const auto tables = durbin_levinson(AutocovSeq(gamma), n);
        py::dict d;
        d["coefficients"] = tables.back().coefficients;
        std::vector<double> sigma2;
        for (const auto& t : tables) sigma2.push_back(t.sigma2);
        d["sigma2"] = sigma2;
        return d;
    }, py::arg("gamma"), py::arg("n"));
    m.def("multistep_normal_solve", [](const std::vector<double>& gamma, std::size_t n, std::size_t h) {
        return multistep_normal_solve(AutocovSeq(gamma), n, h).coefficients;
    }, py::arg("gamma"), py::arg("n"), py::arg("m"));

    m.def("beta_seq", [](const ProcessModel& p, std::size_t L) {
        const std::size_t M = std::max<std::size_t>(default_series_length(p, 0), 4 * L);
        return beta_seq(expand_ma(p, M), expand_ar(p, M + L), L).values;
    }, py::arg("model"), py::arg("L"));
    m.def("hankel_apply", [](const std::vector<double>& beta, std::size_t offset,
                             const std::vector<double>& x, bool naive) {
        BetaSeq b;
        b.values = beta;
        return hankel_apply(b, offset, x, naive ? HankelPath::Naive : HankelPath::Fast);
    }, py::arg("beta"), py::arg("offset"), py::arg("x"), py::arg("naive") = false);

    m.def("finite_predictor", [](const ProcessModel& p, std::size_t n, std::size_t h, std::size_t V,
                                 std::size_t K, double tol_term, const std::string& strategy,
                                 double tol_tail) {
        py::gil_scoped_release release;
        const ExplicitResult r =
            finite_predictor_multistep(p, n, h, make_policy(V, K, tol_term, strategy, tol_tail));
        py::gil_scoped_acquire acquire;
        return explicit_result_dict(r);
    }, py::arg("model"), py::arg("n"), py::arg("m") = 0, py::arg("V") = 0, py::arg("K") = 0,
       py::arg("tol_term") = 1e-13, py::arg("strategy") = "integral", py::arg("tol_tail") = 1e-8);
    m.def("projection_iterates", [](const ProcessModel& p, std::size_t n, std::size_t j, std::size_t h,
                                    std::size_t K) { return projection_iterates(p, n, j, h, K); },
          py::arg("model"), py::arg("n"), py::arg("j"), py::arg("m") = 0, py::arg("K") = 20);
    m.def("d_vectors", [](const ProcessModel& p, std::size_t n, std::size_t K) {
        TruncationPolicy pol;
        pol.K = K;
        const SeriesContext ctx(p, n, pol);
        return d_vectors(ctx, n, pol).d;
    }, py::arg("model"), py::arg("n"), py::arg("K") = 3);

    m.def("fk0", &fk0, py::arg("K"));
    m.def("rate_experiment", [](const ProcessModel& p, std::size_t j, const std::vector<std::size_t>& ns) {
        const RateReport r = rate_experiment(p, j, ns);
        py::dict d;
        d["limit"] = r.theoretical_limit;
        d["phi_j"] = r.phi_j;
        d["richardson"] = r.richardson();
        py::list rows;
        for (const auto& e : r.entries) rows.append(py::make_tuple(e.n, e.phi_nj, e.rate));
        d["entries"] = rows;
        return d;
    }, py::arg("model"), py::arg("j"), py::arg("n_list"));
    m.def("baxter_experiment", [](const ProcessModel& p, const std::vector<std::size_t>& ns) {
        const BaxterReport r = baxter_experiment(p, ns);
        py::dict d;
        d["sup_ratio"] = r.sup_ratio;
        py::list rows;
        for (const auto& e : r.entries) rows.append(py::make_tuple(e.n, e.lhs, e.rhs, e.ratio));
        d["entries"] = rows;
        return d;
    }, py::arg("model"), py::arg("n_list"));
    m.def("dk_scaling_experiment", [](const ProcessModel& p, const std::vector<std::size_t>& ks,
                                      std::size_t u, const std::vector<std::size_t>& ns) {
        py::list rows;
        for (const auto& e : dk_scaling_experiment(p, ks, u, ns)) {
            rows.append(py::make_tuple(e.k, e.n, e.n_dk, e.target));
        }
        return rows;
    }, py::arg("model"), py::arg("k_list"), py::arg("u"), py::arg("n_list"));

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"));
}
