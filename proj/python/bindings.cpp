#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "felsim/error.hpp"
#include "felsim/harness/config.hpp"
#include "felsim/harness/metrics.hpp"
#include "felsim/harness/runner.hpp"
#include "felsim/harness/scenarios.hpp"
#include "felsim/sim/random.hpp"
#include "felsim/workload/workload.hpp"

namespace py = pybind11;
using namespace felsim;
using namespace felsim::harness;

namespace {

harness::ScenarioConfig from_ini(const std::string& text) {
    std::istringstream in(text);
    auto c = parse_config(in);
    validate(c);
    return c;
}

py::dict tables(const MetricsTable& t) {
    std::ostringstream m, c, e;
    write_metrics(m, t.rows);
    write_counters(c, t.counters);
    write_epochs(e, t.epochs);
    py::dict out;
    out["metrics"] = m.str();
    out["counters"] = c.str();
    out["epochs"] = e.str();
    return out;
}

// The GIL is released while the simulator runs.
py::dict run(const ScenarioConfig& c, std::vector<std::uint64_t> seeds, unsigned jobs) {
    if (seeds.empty()) seeds.push_back(c.seed);
    MetricsTable t;
    {
        py::gil_scoped_release release;
        t = run_seeds(c, seeds, jobs);
    }
    return tables(t);
}

} // namespace

PYBIND11_MODULE(_felsim, m) {
    m.doc() = "Discrete-event simulator of cognitive CCN with fog-enabled edge learning";

    // Translators run newest first, so the specific types go last.
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });
    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.attr("METRICS_HEADER") = std::string(kMetricsHeader);
    m.attr("COUNTERS_HEADER") = std::string(kCountersHeader);

    m.def("scenario_ini", [](const std::string& kind, std::uint64_t seed) {
        return to_ini(scenario_for(parse_scenario_kind(kind), seed));
    }, py::arg("kind"), py::arg("seed") = 1, "Built-in scenario (a, b or c) as INI text.");

    m.def("validate_ini", [](const std::string& text) { from_ini(text); }, py::arg("text"),
          "Raises ConfigError naming the offending field.");

    m.def("run_ini", [](const std::string& text, std::vector<std::uint64_t> seeds, unsigned jobs) {
        return run(from_ini(text), std::move(seeds), jobs);
    }, py::arg("text"), py::arg("seeds") = std::vector<std::uint64_t>{}, py::arg("jobs") = 1,
       "Runs every arm; returns the metrics, counters and epochs CSV text.");

    m.def("run_scenario", [](const std::string& kind, std::vector<std::uint64_t> seeds, unsigned jobs) {
        return run(scenario_for(parse_scenario_kind(kind), 1), std::move(seeds), jobs);
    }, py::arg("kind"), py::arg("seeds") = std::vector<std::uint64_t>{1}, py::arg("jobs") = 1);

    py::class_<workload::ZipfSampler>(m, "ZipfSampler")
        .def(py::init<std::size_t, double>(), py::arg("n"), py::arg("s"))
        .def("sample", [](const workload::ZipfSampler& z, std::uint64_t seed, std::size_t count) {
            sim::RandomStream r(seed, "python/zipf");
            std::vector<std::size_t> out(count);
            for (auto& x : out) x = z.sample(r);
            return out;
        }, py::arg("seed"), py::arg("count"), "Ranks in 1..n.");
}
