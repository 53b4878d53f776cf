#include "sparsedom/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

namespace sparsedom {

namespace fs = std::filesystem;

namespace {

Json rationals_to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const Rational& r : v) out.push_back(to_string(r));
  return out;
}

std::vector<Rational> rationals_from_json(const Json& j) {
  std::vector<Rational> out;
  for (const Json& e : j) out.push_back(rational_from_json(e));
  return out;
}

}  // namespace

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>(), 1);
  if (!j.is_string()) throw io_error("expected a rational \"p/q\" string");
  return parse_rational(j.get<std::string>());
}

Json cube_to_json(const DyadicCube& q) {
  Json m = Json::array();
  for (long long p : q.pos) m.push_back(p);
  return Json{{"u", rationals_to_json(q.translation)}, {"j", q.level}, {"m", m}};
}

DyadicCube cube_from_json(const Json& j) {
  std::vector<long long> pos;
  for (const Json& e : j.at("m")) pos.push_back(e.get<long long>());
  return DyadicCube(rationals_from_json(j.at("u")), j.at("j").get<int>(), std::move(pos));
}

Json box_to_json(const Box& b) {
  return Json{{"lo", rationals_to_json(b.lo)}, {"hi", rationals_to_json(b.hi)}};
}

Box box_from_json(const Json& j) {
  Box b{rationals_from_json(j.at("lo")), rationals_from_json(j.at("hi"))};
  if (b.lo.size() != b.hi.size()) throw io_error("box corners disagree in dimension");
  for (int i = 0; i < b.dim(); ++i)
    if (!(b.lo[i] < b.hi[i])) throw io_error("box needs lower < upper in every coordinate");
  return b;
}

Json grid_to_json(const GridSpec& g) {
  return Json{{"d", g.dim()}, {"root", cube_to_json(g.root)}, {"J", g.depth}};
}

GridSpec grid_from_json(const Json& j) {
  GridSpec g(cube_from_json(j.at("root")), j.at("J").get<int>());
  if (j.contains("d") && j.at("d").get<int>() != g.dim())
    throw io_error("grid header dimension mismatch");
  return g;
}

Json q_to_json(double q) {
  if (std::isinf(q)) return "inf";
  return q;
}

double q_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw io_error("bad norm exponent");
  }
  return j.get<double>();
}

Json field_to_json(const SampledFunction& f) {
  Json values = Json::array();
  for (double v : f.values) values.push_back(v);
  return Json{{"grid", grid_to_json(f.grid)},
              {"n", f.components},
              {"q", q_to_json(f.norm_exponent)},
              {"values", values}};
}

SampledFunction field_from_json(const Json& j) {
  GridSpec grid = grid_from_json(j.at("grid"));
  int n = j.value("n", 1);
  double q = j.contains("q") ? q_from_json(j.at("q")) : 2.0;
  if (j.contains("values")) {
    SampledFunction f(grid, n, q);
    const Json& values = j.at("values");
    if (values.size() != f.values.size())
      throw io_error("field payload size mismatch: expected " + std::to_string(f.values.size()));
    for (size_t i = 0; i < f.values.size(); ++i) f.values[i] = values[i].get<double>();
    return f;
  }
  if (!j.contains("generator")) throw io_error("field needs \"values\" or \"generator\"");
  const Json& gen = j.at("generator");
  std::string kind = gen.at("kind").get<std::string>();
  uint64_t seed = gen.value("seed", j.value("seed", uint64_t{1}));
  auto check_components = [&](size_t got) {
    if (j.contains("n") && static_cast<size_t>(n) != got)
      throw io_error("generator value has " + std::to_string(got) +
                     " components but the header says " + std::to_string(n));
  };
  if (kind == "constant") {
    std::vector<double> value = gen.at("value").get<std::vector<double>>();
    check_components(value.size());
    return constant_field(grid, q, value);
  }
  if (kind == "indicator") {
    std::vector<double> value = gen.contains("value")
                                    ? gen.at("value").get<std::vector<double>>()
                                    : std::vector<double>{1.0};
    check_components(value.size());
    return indicator_field(grid, q, box_from_json(gen.at("support")), value);
  }
  if (kind == "random-piecewise") {
    double lo = gen.value("lo", -1.0), hi = gen.value("hi", 1.0);
    return random_piecewise_field(grid, n, q, lo, hi, seed);
  }
  if (kind == "bump") {
    std::vector<double> center = gen.at("center").get<std::vector<double>>();
    std::vector<double> width = gen.at("width").get<std::vector<double>>();
    std::vector<double> amplitude = gen.contains("amplitude")
                                        ? gen.at("amplitude").get<std::vector<double>>()
                                        : std::vector<double>{1.0};
    return bump_field(grid, q, center, width, amplitude);
  }
  throw io_error("unknown generator kind '" + kind + "'");
}

void save_field(const SampledFunction& f, const std::string& header_path,
                const std::string& payload_format) {
  if (payload_format != "binary" && payload_format != "csv")
    throw invalid_argument_error("save_field: payload format must be binary or csv");
  fs::path header(header_path);
  fs::path payload = header;
  payload.replace_extension(payload_format == "binary" ? ".bin" : ".csv");

  Json j{{"grid", grid_to_json(f.grid)},
         {"n", f.components},
         {"q", q_to_json(f.norm_exponent)},
         {"payload", payload_format},
         {"payload_file", payload.filename().string()}};
  std::ofstream hs(header);
  if (!hs) throw io_error("cannot write " + header_path);
  hs << j.dump(2) << "\n";

  if (payload_format == "binary") {
    std::ofstream ps(payload, std::ios::binary);
    if (!ps) throw io_error("cannot write " + payload.string());
    ps.write(reinterpret_cast<const char*>(f.values.data()),
             static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  } else {
    std::ofstream ps(payload);
    if (!ps) throw io_error("cannot write " + payload.string());
    char buf[32];
    for (long long c = 0; c < f.grid.cell_count(); ++c) {
      std::span<const double> cell = f.cell(c);
      for (int i = 0; i < f.components; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", cell[i]);
        ps << (i ? "," : "") << buf;
      }
      ps << "\n";
    }
  }
}

SampledFunction load_field(const std::string& header_path) {
  std::ifstream hs(header_path);
  if (!hs) throw io_error("cannot read " + header_path);
  Json j;
  try {
    hs >> j;
  } catch (const std::exception& e) {
    throw io_error("bad field header: " + std::string(e.what()));
  }
  SampledFunction f(grid_from_json(j.at("grid")), j.value("n", 1),
                    j.contains("q") ? q_from_json(j.at("q")) : 2.0);
  std::string format = j.at("payload").get<std::string>();
  fs::path payload = fs::path(header_path).parent_path() / j.at("payload_file").get<std::string>();
  if (format == "binary") {
    std::ifstream ps(payload, std::ios::binary);
    if (!ps) throw io_error("cannot read " + payload.string());
    ps.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (static_cast<size_t>(ps.gcount()) != f.values.size() * sizeof(double))
      throw io_error("field payload truncated: " + payload.string());
  } else if (format == "csv") {
    std::ifstream ps(payload);
    if (!ps) throw io_error("cannot read " + payload.string());
    std::string line;
    size_t at = 0;
    while (std::getline(ps, line)) {
      size_t pos = 0;
      while (pos < line.size()) {
        size_t comma = line.find(',', pos);
        if (comma == std::string::npos) comma = line.size();
        if (at >= f.values.size()) throw io_error("field payload too long");
        f.values[at++] = std::stod(line.substr(pos, comma - pos));
        pos = comma + 1;
      }
    }
    if (at != f.values.size()) throw io_error("field payload truncated");
  } else {
    throw io_error("unknown payload format '" + format + "'");
  }
  return f;
}

Json certificate_to_json(const OscillationCertificate& c) {
  Json center = Json::array();
  for (double v : c.center) center.push_back(v);
  return Json{{"cube", box_to_json(c.cube)},
              {"lambda", rational_to_json(c.discard)},
              {"center", center},
              {"radius", c.radius},
              {"excess_cells", c.excess.cells.size()}};
}

Json collection_to_json(const SparseCollection& s) {
  Json entries = Json::array();
  for (const SparseEntry& e : s.entries) {
    Json center = Json::array();
    for (double v : e.center) center.push_back(v);
    Json cells = Json::array();
    for (uint32_t c : e.witness.cells) cells.push_back(c);
    entries.push_back(Json{{"cube", cube_to_json(e.cube)},
                           {"generation", e.generation},
                           {"E_cells", cells},
                           {"center", center},
                           {"rho", e.rho},
                           {"omega_bound", e.omega_bound}});
  }
  return Json{{"nu", rational_to_json(s.witness_density)},
              {"lambda", rational_to_json(s.discard)},
              {"kappa", rational_to_json(s.stop_fraction)},
              {"grid", grid_to_json(s.grid)},
              {"entries", entries}};
}

SparseCollection collection_from_json(const Json& j) {
  SparseCollection s;
  s.witness_density = rational_from_json(j.at("nu"));
  s.discard = rational_from_json(j.at("lambda"));
  s.stop_fraction = rational_from_json(j.at("kappa"));
  s.grid = grid_from_json(j.at("grid"));
  for (const Json& je : j.at("entries")) {
    SparseEntry e;
    e.cube = cube_from_json(je.at("cube"));
    e.generation = je.at("generation").get<int>();
    e.witness.grid = s.grid;
    for (const Json& c : je.at("E_cells")) {
      long long idx = c.get<long long>();
      if (idx < 0 || idx >= s.grid.cell_count()) throw io_error("E_cells index out of range");
      e.witness.cells.push_back(static_cast<uint32_t>(idx));
    }
    for (const Json& v : je.at("center")) e.center.push_back(v.get<double>());
    e.rho = je.at("rho").get<double>();
    e.omega_bound = je.value("omega_bound", 3.0 * e.rho);
    s.entries.push_back(std::move(e));
  }
  return s;
}

Json shift_to_json(const ShiftSpec& s) {
  Json cubes = Json::array();
  for (const DyadicCube& q : s.cubes) {
    Json m = Json::array();
    for (long long p : q.pos) m.push_back(p);
    cubes.push_back(Json{{"j", q.level}, {"m", m}});
  }
  Json u = s.cubes.empty() ? Json::array()
                           : rationals_to_json(s.cubes.front().translation);
  return Json{{"u", u}, {"k", s.complexity}, {"cubes", cubes}};
}

ShiftSpec shift_from_json(const Json& j) {
  ShiftSpec s;
  s.complexity = j.at("k").get<int>();
  std::vector<Rational> u = rationals_from_json(j.at("u"));
  for (const Json& jc : j.at("cubes")) {
    std::vector<long long> pos;
    for (const Json& e : jc.at("m")) pos.push_back(e.get<long long>());
    s.cubes.emplace_back(u, jc.at("j").get<int>(), std::move(pos));
  }
  s.validate();
  return s;
}

Json general_shift_to_json(const GeneralShiftSpec& s) {
  Json terms = Json::array();
  for (const GeneralShiftTerm& t : s.terms)
    terms.push_back(Json{{"Q", cube_to_json(t.outer)},
                         {"R", cube_to_json(t.inner)},
                         {"S", cube_to_json(t.source)},
                         {"a", t.coeff}});
  return Json{{"m", s.inner_steps}, {"n", s.source_steps}, {"terms", terms}};
}

GeneralShiftSpec general_shift_from_json(const Json& j) {
  GeneralShiftSpec s;
  s.inner_steps = j.at("m").get<int>();
  s.source_steps = j.at("n").get<int>();
  for (const Json& jt : j.at("terms"))
    s.terms.push_back({cube_from_json(jt.at("Q")), cube_from_json(jt.at("R")),
                       cube_from_json(jt.at("S")), jt.at("a").get<double>()});
  s.validate();
  return s;
}

namespace {

const char* kernel_kind_name(KernelKind k) {
  switch (k) {
    case KernelKind::hilbert_truncated: return "hilbert_truncated";
    case KernelKind::power_truncated: return "power_truncated";
    case KernelKind::matrix_composed: return "matrix_composed";
    case KernelKind::diagonal_family: return "diagonal_family";
  }
  return "?";
}

}  // namespace

Json kernel_to_json(const KernelSpec& k) {
  Json out{{"kind", kernel_kind_name(k.kind)},
           {"alpha", k.holder_exponent},
           {"eps_trunc", k.truncation > 0 ? Json(k.truncation) : Json(nullptr)},
           {"n", k.components}};
  if (k.kind == KernelKind::matrix_composed) out["matrix"] = k.matrix;
  if (k.kind == KernelKind::diagonal_family) out["diag"] = k.diag;
  return out;
}

KernelSpec kernel_from_json(const Json& j) {
  KernelSpec k;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "hilbert_truncated")
    k.kind = KernelKind::hilbert_truncated;
  else if (kind == "power_truncated")
    k.kind = KernelKind::power_truncated;
  else if (kind == "matrix_composed")
    k.kind = KernelKind::matrix_composed;
  else if (kind == "diagonal_family")
    k.kind = KernelKind::diagonal_family;
  else
    throw io_error("unknown kernel kind '" + kind + "'");
  k.holder_exponent = j.value("alpha", 1.0);
  if (j.contains("eps_trunc") && !j.at("eps_trunc").is_null())
    k.truncation = j.at("eps_trunc").get<double>();
  k.components = j.value("n", 1);
  if (j.contains("matrix")) k.matrix = j.at("matrix").get<std::vector<double>>();
  if (j.contains("diag")) k.diag = j.at("diag").get<std::vector<double>>();
  return k;
}

Json ap_report_to_json(const ApReport& r) {
  return Json{{"p", std::isinf(r.p) ? Json("inf") : Json(r.p)},
              {"value", r.value},
              {"argmax_cube", box_to_json(r.argmax_cube)},
              {"cube_family_size", r.cube_family_size}};
}

Json domination_report_to_json(const DominationReport& r) {
  Json collections = Json::array();
  for (const CoverCollection& g : r.collections) {
    Json cubes = Json::array();
    Json witness = Json::array();
    for (size_t i = 0; i < g.cubes.size(); ++i) {
      cubes.push_back(cube_to_json(g.cubes[i]));
      Json cells = Json::array();
      for (uint32_t c : g.witnesses[i].cells) cells.push_back(c);
      witness.push_back(cells);
    }
    collections.push_back(Json{{"u", rationals_to_json(g.translation)},
                               {"k", g.complexity},
                               {"cubes", cubes},
                               {"witness_cells", witness}});
  }
  Json lhs = Json::array(), rhs = Json::array();
  for (double v : r.lhs.values) lhs.push_back(v);
  for (double v : r.rhs.values) rhs.push_back(v);
  Json mass = Json::array();
  for (double v : r.per_k_mass) mass.push_back(v);
  return Json{{"C_emp", r.c_emp},
              {"tail_bound", r.tail_bound},
              {"per_k_mass", mass},
              {"decomposition", collection_to_json(r.decomposition)},
              {"collections", collections},
              {"lhs_field", lhs},
              {"rhs_field", rhs}};
}

Json a2_experiment_to_json(const A2Experiment& e) {
  Json rows = Json::array();
  for (const A2Row& r : e.rows)
    rows.push_back(Json{{"a", r.exponent}, {"ap", r.ap_value}, {"ratio", r.ratio}});
  Json bank = Json::array();
  for (const std::string& name : e.bank) bank.push_back(name);
  return Json{{"p", e.p}, {"fitted_slope", e.fitted_slope}, {"rows", rows}, {"bank", bank}};
}

Json verify_report_to_json(const VerifyReport& r) {
  return Json{{"holds", r.holds},
              {"max_violation", r.max_violation},
              {"worst_cell", r.worst_cell}};
}

}  // namespace sparsedom
