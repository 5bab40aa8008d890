#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "micsmp/analysis.hpp"
#include "micsmp/error.hpp"
#include "micsmp/model_io.hpp"
#include "micsmp/montecarlo.hpp"

namespace py = pybind11;
using namespace micsmp;

namespace {

Configuration config(const MicSMPModel& model, Mask bits) {
  return make_configuration(bits, model.n());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Microscopic spatial Moran process: exact and Monte Carlo fixation";

  py::exception<Error>(m, "MicsmpError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object type = py::module_::import("micsmp._core").attr("MicsmpError");
      const std::string message = std::string(to_string(e.code())) + ": " + e.what();
      PyErr_SetString(type.ptr(), message.c_str());
    }
  });

  py::class_<MicSMPModel>(m, "Model")
      .def(py::init([](const Eigen::MatrixXd& w, std::optional<Eigen::RowVectorXd> mu, double r) {
             WeightMatrix wm = validate_weight_matrix(w);
             if (!mu) return MicSMPModel::stationary(std::move(wm), r);
             return MicSMPModel(std::move(wm), SelectionPolicy::from_values(*mu), r);
           }),
           py::arg("W"), py::arg("mu") = py::none(), py::arg("r") = 1.0,
           "mu=None selects the stationary distribution of W.")
      .def_static("from_json", [](const std::string& text) {
        return parse_model(nlohmann::json::parse(text));
      })
      .def_static("load", [](const std::string& source) { return load_model(source); },
                  "Model file path or builtin such as '@galanis'.")
      .def_property_readonly("n", &MicSMPModel::n)
      .def_property_readonly("r", &MicSMPModel::fitness)
      .def_property_readonly("W", [](const MicSMPModel& s) { return s.weights().matrix(); })
      .def_property_readonly("mu", [](const MicSMPModel& s) { return s.policy().values(); })
      .def("has_stationary_selection", &MicSMPModel::has_stationary_selection,
           py::arg("tol") = kDefaultTolerance);

  m.def("stationary_distribution", [](const Eigen::MatrixXd& w) {
    return stationary_distribution(validate_weight_matrix(w)).values();
  });
  m.def("is_isothermal", [](const Eigen::MatrixXd& w) {
    return is_isothermal(validate_weight_matrix(w));
  });
  m.def("enumerate_level", [](int n, int j) {
    std::vector<Mask> out;
    for (const auto& x : enumerate_level(n, j)) out.push_back(x.bits);
    return out;
  });

  m.def("p_plus", [](const MicSMPModel& s, Mask x) { return p_plus(config(s, x), s); });
  m.def("p_minus", [](const MicSMPModel& s, Mask x) { return p_minus(config(s, x), s); });
  m.def("step_distribution", [](const MicSMPModel& s, Mask x) {
    const auto step = step_distribution(config(s, x), s);
    std::vector<std::pair<Mask, double>> moves;
    for (const auto& t : step.transitions) moves.emplace_back(t.target.bits, t.probability);
    return py::make_tuple(moves, step.idle_probability);
  }, "Returns ([(target_mask, probability), ...], idle_probability).");
  m.def("transition_matrix", [](const MicSMPModel& s) {
    const auto kernel = transition_kernel(s, kMaxDenseVertices);
    const auto size = static_cast<Eigen::Index>(kernel.size());
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(size, size);
    for (Mask x = 0; x < kernel.size(); ++x) {
      kernel.for_each_in_row(x, [&](Mask to, double v) { p(x, to) = v; });
    }
    return p;
  }, "Dense 2^n x 2^n kernel indexed by mask (n <= 12).");

  m.def("moran_rho", &moran_rho, py::arg("i"), py::arg("n"), py::arg("r"));
  m.def("fixation_probabilities", [](const MicSMPModel& s, const std::string& solver) {
    SolverOptions opts;
    if (solver == "dense") opts.kind = SolverKind::Dense;
    else if (solver == "iterative") opts.kind = SolverKind::Iterative;
    else if (solver != "auto") throw Error(ErrorCode::InvalidArgument, "unknown solver " + solver);
    return fixation_probabilities(s, opts).rho;
  }, py::arg("model"), py::arg("solver") = "auto", "rho indexed by mask.");
  m.def("fixation_for_initial", [](const MicSMPModel& s, const std::string& init) {
    return fixation_for_initial(s, parse_init(init, s.n()));
  }, py::arg("model"), py::arg("init"), "init: 'mask:K', 'level:j:uniform' or 'atoms:[(mask,w),...]'.");

  m.def("estimate_fixation",
        [](const MicSMPModel& s, const std::string& init, long trials, std::uint64_t seed,
           const std::string& mode, long max_steps, int workers) {
          TrajectoryConfig cfg;
          cfg.seed = seed;
          cfg.max_steps = max_steps;
          cfg.mode = mode == "faithful" ? SimulationMode::Faithful : SimulationMode::EventDriven;
          SimulationResult res;
          {
            py::gil_scoped_release release;
            res = estimate_fixation(s, parse_init(init, s.n()), trials, cfg, workers);
          }
          return py::dict(py::arg("trials") = res.trials, py::arg("fixations") = res.fixations,
                          py::arg("extinctions") = res.extinctions,
                          py::arg("censored") = res.censored, py::arg("frequency") = res.frequency,
                          py::arg("ci_halfwidth") = res.ci_halfwidth, py::arg("seed") = res.seed);
        },
        py::arg("model"), py::arg("init"), py::arg("trials"), py::arg("seed") = 0,
        py::arg("mode") = "event", py::arg("max_steps") = 10'000'000, py::arg("workers") = 0);

  m.def("martingale_report", [](const MicSMPModel& s) {
    const auto rep = martingale_report(s);
    return py::dict(py::arg("max_abs_drift") = rep.max_abs_drift,
                    py::arg("max_abs_exp_drift") = rep.max_abs_exp_drift);
  });
  m.def("ratio_constancy", [](const MicSMPModel& s) { return ratio_constancy(s).max_deviation; });
  m.def("macro_markov_check", [](const MicSMPModel& s) {
    const auto res = macro_markov_check(s);
    py::object witness = py::none();
    if (res.witness) {
      witness = py::make_tuple(res.witness->level, res.witness->first.bits, res.witness->second.bits);
    }
    return py::make_tuple(res.lumpable, witness);
  }, "Returns (lumpable, (level, mask, other_mask) or None).");

  m.def("n2_fixation_closed_form", [](double a, double mm, double c, double r) {
    return n2_fixation_closed_form({a, mm, c, r});
  }, py::arg("a"), py::arg("m"), py::arg("c"), py::arg("r"));
  m.def("n2_F", [](double a, double mm, double c, double r) { return n2_F({a, mm, c, r}); },
        py::arg("a"), py::arg("m"), py::arg("c"), py::arg("r"));
  m.def("n2_moran_selection", &n2_moran_selection, py::arg("a"), py::arg("c"), py::arg("r"));
  m.def("sweep_n2", [](double c, double r, int grid) {
    const auto sweep = sweep_n2(c, r, grid);
    Eigen::MatrixXd out(grid, grid);
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j) out(i, j) = sweep.at(i, j);
    return out;
  }, py::arg("c"), py::arg("r"), py::arg("grid"), "Rows index a, columns index m.");

  m.def("galanis_model", [](double r) { return galanis_model(r); }, py::arg("r") = 1.0);
  m.def("galanis_neutral_fixation", [](double a1, double a2, double m1, double m2) {
    return galanis_neutral_fixation({a1, a2, m1, m2});
  }, py::arg("a1"), py::arg("a2"), py::arg("m1"), py::arg("m2"));
  m.def("galanis_moran_condition", [](double a1, double a2, double m1, double m2) {
    const auto res = galanis_moran_condition({a1, a2, m1, m2});
    const char* names[] = {"Case1", "Case2", "Case3", "None"};
    return py::make_tuple(names[static_cast<int>(res.kind)], res.residual);
  }, py::arg("a1"), py::arg("a2"), py::arg("m1"), py::arg("m2"));
  m.def("complete_graph_model", &complete_graph_model, py::arg("n"), py::arg("r") = 1.0);
  m.def("classic_moran_check", &classic_moran_check, py::arg("n"), py::arg("r"));
}
