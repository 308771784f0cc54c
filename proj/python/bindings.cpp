#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hermpir/atlas.hpp"
#include "hermpir/cli.hpp"
#include "hermpir/suites.hpp"
#include "hermpir/xstpir.hpp"

namespace py = pybind11;
using namespace hermpir;

namespace {

py::dict rate_dict(const atlas::RateRecord& r) {
  py::dict d;
  d["feasible"] = r.feasible;
  d["L"] = r.L;
  d["N"] = r.N;
  d["J"] = r.J ? py::cast(*r.J) : py::none();
  d["m"] = r.m ? py::cast(*r.m) : py::none();
  d["numerator"] = r.rate.numerator();
  d["denominator"] = r.rate.denominator();
  d["decimal"] = r.decimal();
  d["violated"] = r.violated;
  py::list conv;
  for (const auto c : r.conventions) conv.append(atlas::to_string(c));
  d["conventions"] = conv;
  return d;
}

atlas::Convention parse_convention(const std::string& s) {
  if (s == "theorem-N") return atlas::Convention::theorem_n;
  if (s == "table-deg-N") return atlas::Convention::table_deg_n;
  throw InvalidArgument("convention must be theorem-N or table-deg-N");
}

}  // namespace

PYBIND11_MODULE(_hermpir, m) {
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  m.def("format_sig5", &atlas::format_sig5, py::arg("num"), py::arg("den"));

  m.def(
      "rational_rate", [](std::uint32_t field_order, int X, int T) { return rate_dict(atlas::rational_max_rate(field_order, X, T)); },
      py::arg("field_order"), py::arg("X"), py::arg("T"));
  m.def(
      "hyperelliptic_rate",
      [](std::uint32_t field_order, int g, int count, int gamma, int X, int T) {
        return rate_dict(atlas::hyperelliptic_jmax(field_order, g, count, gamma, X, T));
      },
      py::arg("field_order"), py::arg("g"), py::arg("count"), py::arg("gamma"), py::arg("X"), py::arg("T"));
  m.def(
      "hermitian_rate",
      [](int q, int X, int T, const std::string& convention) {
        return rate_dict(atlas::hermitian_max_rate(q, X, T, parse_convention(convention)));
      },
      py::arg("q"), py::arg("X"), py::arg("T"), py::arg("convention") = "theorem-N");

  m.def(
      "render_table",
      [](int which, const std::string& format) {
        const auto t = atlas::emit_table(which);
        if (format == "md") return atlas::render_markdown(t);
        if (format == "csv") return atlas::render_csv(t);
        if (format == "json") return atlas::render_json(t);
        throw InvalidArgument("format must be md, csv or json");
      },
      py::arg("which"), py::arg("format") = "csv");

  m.def(
      "count_points_hyperelliptic",
      [](std::uint32_t p, std::uint32_t degree, const std::vector<std::uint32_t>& coeffs) {
        const gf::Field f(p, degree);
        const auto c = atlas::count_points_hyperelliptic(f, coeffs);
        return py::make_tuple(c.point_count, c.gamma);
      },
      py::arg("p"), py::arg("degree"), py::arg("coefficients"));
  m.def(
      "count_points_hermitian",
      [](std::uint32_t q) { return curve::HermitianCurve::over(q).affine_points().size() + 1; }, py::arg("q"));

  m.def(
      "pir_roundtrip",
      [](int q, int X, int T, int files, int desired, std::uint64_t seed) {
        const auto inst = pir::SchemeInstance::build(pir::validate_params(q, X, T, std::nullopt, files, seed));
        gf::Rng rng(seed);
        std::vector<std::vector<gf::Element>> data(static_cast<std::size_t>(files),
                                                   std::vector<gf::Element>(inst.params().L));
        for (auto& file : data) {
          for (auto& s : file) s = inst.field().sample(rng);
        }
        const auto shares = pir::encode_storage(inst, data, rng);
        const auto queries = pir::make_queries(inst, desired, rng);
        const auto got = pir::reconstruct(inst, pir::collect_answers(inst, shares, queries));
        py::dict d;
        d["L"] = inst.params().L;
        d["N"] = inst.params().N;
        d["correct"] = got == data.at(static_cast<std::size_t>(desired));
        return d;
      },
      py::arg("q"), py::arg("X"), py::arg("T"), py::arg("files") = 1, py::arg("desired") = 0, py::arg("seed") = 1);

  m.def(
      "certify",
      [](int q, int X, int T) {
        const auto r = pir::certify_instance(pir::SchemeInstance::build(pir::validate_params(q, X, T)));
        py::dict d;
        d["rate"] = std::to_string(r.rate_num) + "/" + std::to_string(r.rate_den);
        d["priv_dual_bound"] = r.priv_dual_bound;
        d["sec_dual_bounds"] = r.sec_dual_bounds;
        d["noise_count"] = r.noise_count;
        d["decode_rank"] = r.decode_rank;
        d["all_passed"] = r.all_passed();
        return d;
      },
      py::arg("q"), py::arg("X"), py::arg("T"));

  m.def("suite_names", &suites::suite_names);
  m.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed) {
        suites::SuiteOptions opts;
        opts.seed = seed;
        const auto r = suites::run_suite(name, opts);
        py::list checks;
        for (const auto& c : r.checks) checks.append(py::make_tuple(c.name, c.passed, c.detail));
        py::dict d;
        d["suite"] = r.suite;
        d["checks"] = checks;
        d["all_passed"] = r.all_passed();
        return d;
      },
      py::arg("name"), py::arg("seed") = 1);

  m.def(
      "cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "hermpir");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
