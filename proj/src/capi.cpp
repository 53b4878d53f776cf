#include "sparsedom.h"

#include <cstdlib>
#include <cstring>

#include "sparsedom/io.hpp"

using namespace sparsedom;

struct sd_field {
  SampledFunction value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
sd_status guarded(Fn&& fn) {
  try {
    fn();
    return SD_OK;
  } catch (const invalid_argument_error& e) {
    g_last_error = e.what();
    return SD_ERR_INVALID_ARGUMENT;
  } catch (const empty_cube_error& e) {
    g_last_error = e.what();
    return SD_ERR_INVALID_ARGUMENT;
  } catch (const io_error& e) {
    g_last_error = e.what();
    return SD_ERR_IO;
  } catch (const invariant_error& e) {
    g_last_error = e.what();
    return SD_ERR_INVARIANT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SD_ERR_INTERNAL;
  }
}

Json parse(const char* text, const char* who) {
  if (!text) throw invalid_argument_error(std::string(who) + ": null JSON");
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw io_error(std::string(who) + ": " + e.what());
  }
}

DyadicCube base_cube(const Json& params, const SampledFunction& f) {
  if (params.contains("base")) return cube_from_json(params.at("base"));
  return f.grid.root;
}

}  // namespace

extern "C" {

const char* sd_version(void) { return "0.1.0"; }

const char* sd_status_name(sd_status status) {
  switch (status) {
    case SD_OK: return "ok";
    case SD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SD_ERR_IO: return "io error";
    case SD_ERR_INVARIANT: return "invariant violation";
    case SD_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* sd_last_error(void) { return g_last_error.c_str(); }

void sd_free_string(char* s) { std::free(s); }

sd_status sd_field_from_json(const char* json, sd_field** out) {
  return guarded([&] {
    if (!out) throw invalid_argument_error("sd_field_from_json: null output");
    *out = new sd_field{field_from_json(parse(json, "sd_field_from_json"))};
  });
}

sd_status sd_field_load(const char* header_path, sd_field** out) {
  return guarded([&] {
    if (!out || !header_path) throw invalid_argument_error("sd_field_load: null argument");
    *out = new sd_field{load_field(header_path)};
  });
}

sd_status sd_field_save(const sd_field* field, const char* header_path,
                        const char* payload_format) {
  return guarded([&] {
    if (!field || !header_path) throw invalid_argument_error("sd_field_save: null argument");
    save_field(field->value, header_path, payload_format ? payload_format : "binary");
  });
}

sd_status sd_field_info(const sd_field* field, char** info_json) {
  return guarded([&] {
    if (!field || !info_json) throw invalid_argument_error("sd_field_info: null argument");
    Json j{{"grid", grid_to_json(field->value.grid)},
           {"n", field->value.components},
           {"q", q_to_json(field->value.norm_exponent)},
           {"cells", field->value.grid.cell_count()}};
    *info_json = dup_string(j.dump(2));
  });
}

sd_status sd_field_values(const sd_field* field, const double** data, size_t* count) {
  return guarded([&] {
    if (!field || !data || !count)
      throw invalid_argument_error("sd_field_values: null argument");
    *data = field->value.values.data();
    *count = field->value.values.size();
  });
}

void sd_field_free(sd_field* field) { delete field; }

sd_status sd_decompose(const sd_field* field, const char* params_json, char** report_json) {
  return guarded([&] {
    if (!field || !report_json) throw invalid_argument_error("sd_decompose: null argument");
    Json params = params_json ? parse(params_json, "sd_decompose") : Json::object();
    Rational nu =
        params.contains("nu") ? rational_from_json(params.at("nu")) : Rational(1, 2);
    SparseCollection s = decompose(field->value, base_cube(params, field->value), nu);
    *report_json = dup_string(collection_to_json(s).dump(2));
  });
}

sd_status sd_verify(const sd_field* field, const char* collection_json, char** report_json) {
  return guarded([&] {
    if (!field || !report_json) throw invalid_argument_error("sd_verify: null argument");
    SparseCollection s = collection_from_json(parse(collection_json, "sd_verify"));
    SparseCheckReport structural = check_sparse_invariants(s);
    VerifyReport pointwise = verify_decomposition(field->value, s);
    Json j{{"sparse_ok", structural.ok},
           {"violation", structural.violation},
           {"holds", pointwise.holds},
           {"max_violation", pointwise.max_violation},
           {"worst_cell", pointwise.worst_cell}};
    *report_json = dup_string(j.dump(2));
  });
}

sd_status sd_shift_apply(const sd_field* field, const char* shift_spec_json, sd_field** out) {
  return guarded([&] {
    if (!field || !out) throw invalid_argument_error("sd_shift_apply: null argument");
    Json spec = parse(shift_spec_json, "sd_shift_apply");
    if (spec.contains("terms"))
      *out = new sd_field{apply_general_shift(general_shift_from_json(spec), field->value)};
    else
      *out = new sd_field{apply_shift(shift_from_json(spec), field->value)};
  });
}

sd_status sd_apply_t(const sd_field* field, const char* kernel_json, sd_field** out) {
  return guarded([&] {
    if (!field || !out) throw invalid_argument_error("sd_apply_t: null argument");
    *out = new sd_field{apply_cz(kernel_from_json(parse(kernel_json, "sd_apply_t")),
                                 field->value)};
  });
}

sd_status sd_dominate(const sd_field* field, const char* params_json, char** report_json) {
  return guarded([&] {
    if (!field || !report_json) throw invalid_argument_error("sd_dominate: null argument");
    Json params = parse(params_json, "sd_dominate");
    DominationParams p;
    p.kernel = kernel_from_json(params.at("kernel"));
    p.base = base_cube(params, field->value);
    if (params.contains("nu")) p.witness_density = rational_from_json(params.at("nu"));
    p.max_complexity = params.value("K", 8);
    DominationReport report = dominate(field->value, p);
    Json j = domination_report_to_json(report);
    SparseCheckReport checks = check_domination_invariants(report);
    j["collections_ok"] = checks.ok;
    j["collections_violation"] = checks.violation;
    *report_json = dup_string(j.dump(2));
  });
}

sd_status sd_a2_experiment(const char* params_json, char** report_json) {
  return guarded([&] {
    if (!report_json) throw invalid_argument_error("sd_a2_experiment: null argument");
    Json params = parse(params_json, "sd_a2_experiment");
    A2Params p;
    p.kernel = kernel_from_json(params.at("kernel"));
    p.grid = grid_from_json(params.at("grid"));
    p.p = params.value("p", 2.0);
    p.exponents = params.at("exponents").get<std::vector<double>>();
    p.seed = params.value("seed", uint64_t{1});
    *report_json = dup_string(a2_experiment_to_json(a2_experiment(p)).dump(2));
  });
}

sd_status sd_weights_report(const char* params_json, char** report_json) {
  return guarded([&] {
    if (!report_json) throw invalid_argument_error("sd_weights_report: null argument");
    Json params = parse(params_json, "sd_weights_report");
    GridSpec grid = grid_from_json(params.at("grid"));
    Weight w = [&] {
      Json jw = params.at("weight");
      if (jw.is_string()) return Weight(load_field(jw.get<std::string>()));
      if (jw.contains("generator") && jw.at("generator").value("kind", "") == "power")
        return power_weight(grid, jw.at("generator").at("a").get<double>());
      if (!jw.contains("grid")) jw["grid"] = grid_to_json(grid);
      return Weight(field_from_json(jw));
    }();
    std::vector<double> ps = params.contains("p")
                                 ? params.at("p").get<std::vector<double>>()
                                 : std::vector<double>{2.0};
    Json reports = Json::array();
    for (double p : ps) reports.push_back(ap_report_to_json(ap_characteristic(w, p)));
    Json j{{"grid", grid_to_json(grid)}, {"ap", reports}};
    if (params.value("a_infty", false))
      j["a_infty"] = ap_report_to_json(a_infty_characteristic(w));
    *report_json = dup_string(j.dump(2));
  });
}

}  // extern "C"
