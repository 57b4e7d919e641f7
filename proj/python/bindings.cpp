#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kholag/cobordism.hpp"
#include "kholag/error.hpp"
#include "kholag/khovanov.hpp"
#include "kholag/lee.hpp"
#include "kholag/report.hpp"
#include "kholag/transverse.hpp"

namespace py = pybind11;
using namespace kholag;

namespace {

LinkDiagram diagram(const std::string& text) { return parse_diagram(text); }

py::dict homology_dict(const BigradedHomology& h) {
  py::dict out;
  for (const auto& [key, g] : h.groups) {
    if (g.is_zero()) continue;
    out[py::make_tuple(key.first, key.second)] = py::make_tuple(g.free_rank, g.torsion);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_kholag, m) {
  m.doc() = "Khovanov and Lee homology of braid closures with transverse invariants";

  static py::exception<Error> base(m, "KholagError", PyExc_ValueError);
  static py::exception<ParseError> parse(m, "ParseError", base.ptr());
  static py::exception<DomainError> domain(m, "DomainError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse, e.what());
    } catch (const DomainError& e) {
      py::set_error(domain, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  m.def("self_linking", [](const std::string& b) { return self_linking(parse_braid(b)); }, py::arg("braid"));
  m.def("canonical_key", [](const std::string& b) { return canonical_key(parse_braid(b)); }, py::arg("braid"));
  m.def("khovanov", [](const std::string& d) { return homology_dict(khovanov_homology(diagram(d))); },
        py::arg("diagram"), "{(quantum, homological): (rank, torsion)}");
  m.def("khovanov_json", [](const std::string& d) { return homology_to_json(khovanov_homology(diagram(d))); },
        py::arg("diagram"));
  m.def("ng_line", [](const std::string& d) { return ng_line(khovanov_homology(diagram(d))); }, py::arg("diagram"));
  m.def("lee_ranks", [](const std::string& d) {
    std::map<int, int> out;
    const auto h = homology(build_lee_complex(diagram(d)).complex(), Grading::homological);
    for (const auto& [key, g] : h.groups)
      if (g.free_rank) out[key.second] += g.free_rank;
    return out;
  }, py::arg("diagram"), "{homological degree: rational rank}");
  m.def("s_invariant", [](const std::string& d) {
    const auto s = s_invariant(diagram(d));
    return py::make_tuple(s.s, s.s_min, s.s_max);
  }, py::arg("diagram"), "(s, s_min, s_max)");
  m.def("psi_vanishes", [](const std::string& b) { return psi_vanishes(diagram(b)); }, py::arg("braid"));
  m.def("psi_pq_vanishes", [](const std::string& b, int p, int q) { return psi_pq_vanishes(diagram(b), p, q); },
        py::arg("braid"), py::arg("p"), py::arg("q"));
  m.def("obstruct_json", [](const std::string& bottom, const std::string& top, int E, std::optional<int> tb_bottom,
                            std::optional<int> r_bottom, std::optional<int> tb_top, std::optional<int> r_top,
                            const std::vector<std::pair<int, int>>& windows) {
    const LinkEnd b{parse_frame(bottom), tb_bottom, r_bottom};
    const LinkEnd t{parse_braid(top), tb_top, r_top};
    py::gil_scoped_release release;
    return report_to_json(obstruction_report(b, t, E, windows));
  }, py::arg("bottom"), py::arg("top"), py::arg("E"), py::arg("tb_bottom") = py::none(),
        py::arg("r_bottom") = py::none(), py::arg("tb_top") = py::none(), py::arg("r_top") = py::none(),
        py::arg("windows") = std::vector<std::pair<int, int>>{});
  m.def("effectiveness_json", [](const std::string& b) { return effectiveness_to_json(effectiveness_classify(parse_braid(b))); },
        py::arg("braid"));
  m.def("movie_check", [](const std::string& script) {
    const Movie mv = parse_movie_json(script);
    py::dict out;
    out["euler_characteristic"] = mv.euler_characteristic();
    out["ascending_positive"] = mv.ascending_positive();
    out["bidegree"] = map_bidegree(compose_movie_map(mv, Theory::khovanov));
    out["functoriality"] = to_string(check_functoriality(mv).verdict);
    if (mv.bottom().is_empty_link()) out["filling_value"] = check_filling_value(mv);
    py::dict windows;
    for (auto [p, q] : kDefaultWindows)
      windows[py::make_tuple(p, q)] = to_string(check_filtered_functoriality(mv, p, q).verdict);
    out["filtered"] = windows;
    return out;
  }, py::arg("script"), "Run the functoriality checks on a movie script (JSON text).");
}
