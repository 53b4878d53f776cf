// Command-line front end.  All computation goes through the sparsedom C API;
// this binary only assembles configs, shuttles JSON, and writes reports.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "sparsedom.h"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void fail_status(const char* what, sd_status status) {
  throw CliError(std::string(what) + ": " + sd_status_name(status) + " (" + sd_last_error() +
                 ")");
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { sd_free_string(ptr); }
};

struct OwnedField {
  sd_field* ptr = nullptr;
  ~OwnedField() { sd_field_free(ptr); }
};

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError("cannot read " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw CliError("bad JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw CliError("cannot write " + path.string());
  out << text;
}

// Options shared by every subcommand; flag values override config entries.
struct Common {
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "both";  // json | csv | both
  Json config = Json::object();

  void load() {
    if (!config_path.empty()) config = load_json(config_path);
    if (!config.is_object()) throw CliError("config must be a JSON object");
  }
  bool want_json() const { return format != "csv"; }
  bool want_csv() const { return format != "json"; }
  fs::path out(const std::string& name) const {
    fs::create_directories(out_dir);
    return fs::path(out_dir) / name;
  }
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--config", common.config_path, "JSON config file");
  cmd->add_option("--out", common.out_dir, "output directory (default .)");
  cmd->add_option("--format", common.format, "json|csv|both (default both)")
      ->check(CLI::IsMember({"json", "csv", "both"}));
}

// Field resolution: --field <path> wins, else config "field" path, else
// config {grid, n, q, generator, seed}.
OwnedField resolve_field(const Common& common, const std::string& field_flag) {
  OwnedField field;
  std::string path = field_flag;
  if (path.empty() && common.config.contains("field") && common.config.at("field").is_string())
    path = common.config.at("field").get<std::string>();
  sd_status status;
  if (!path.empty()) {
    status = sd_field_load(path.c_str(), &field.ptr);
  } else {
    Json spec;
    for (const char* key : {"grid", "n", "q", "generator", "seed"})
      if (common.config.contains(key)) spec[key] = common.config.at(key);
    if (!spec.contains("grid")) throw CliError("no field: pass --field or config grid+generator");
    status = sd_field_from_json(spec.dump().c_str(), &field.ptr);
  }
  if (status != SD_OK) fail_status("field", status);
  return field;
}

long long cells_in_cube(const Json& grid, const Json& cube) {
  int depth = grid.at("J").get<int>();
  int root_level = grid.at("root").at("j").get<int>();
  int level = cube.at("j").get<int>();
  int d = static_cast<int>(cube.at("m").size());
  long long per_axis = 1LL << (depth - (level - root_level));
  long long total = 1;
  for (int i = 0; i < d; ++i) total *= per_axis;
  return total;
}

std::string cube_label(const Json& cube) {
  std::string s = "j=" + std::to_string(cube.at("j").get<int>()) + " m=(";
  const Json& m = cube.at("m");
  for (size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + m[i].dump();
  return s + ")";
}

int run_decompose(Common& common, const std::string& field_flag, const std::string& nu) {
  OwnedField field = resolve_field(common, field_flag);
  Json params;
  params["nu"] = !nu.empty() ? Json(nu) : common.config.value("nu", Json("1/2"));
  if (common.config.contains("base")) params["base"] = common.config.at("base");
  OwnedString report;
  sd_status status = sd_decompose(field.ptr, params.dump().c_str(), &report.ptr);
  if (status != SD_OK) fail_status("decompose", status);
  if (common.want_json()) write_text(common.out("decomposition.json"), report.ptr);
  if (common.want_csv()) {
    Json j = Json::parse(report.ptr);
    std::string csv = "cube,generation,rho,witness_fraction\n";
    for (const Json& e : j.at("entries")) {
      double frac = static_cast<double>(e.at("E_cells").size()) /
                    static_cast<double>(cells_in_cube(j.at("grid"), e.at("cube")));
      csv += "\"" + cube_label(e.at("cube")) + "\"," + e.at("generation").dump() + "," +
             e.at("rho").dump() + "," + std::to_string(frac) + "\n";
    }
    write_text(common.out("decomposition.csv"), csv);
  }
  std::cout << "decompose: wrote " << common.out_dir << "\n";
  return 0;
}

int run_verify(Common& common, const std::string& field_flag, const std::string& collection) {
  OwnedField field = resolve_field(common, field_flag);
  std::string path = collection;
  if (path.empty() && common.config.contains("collection"))
    path = common.config.at("collection").get<std::string>();
  if (path.empty()) throw CliError("verify needs --collection <file>");
  Json coll = load_json(path);
  OwnedString report;
  sd_status status = sd_verify(field.ptr, coll.dump().c_str(), &report.ptr);
  if (status != SD_OK) fail_status("verify", status);
  Json j = Json::parse(report.ptr);
  if (common.want_json()) write_text(common.out("verify.json"), report.ptr);
  bool ok = j.at("sparse_ok").get<bool>() && j.at("holds").get<bool>();
  std::cout << (ok ? "verify: ok" : "verify: VIOLATION") << " max_violation="
            << j.at("max_violation").dump() << " violation=" << j.value("violation", "")
            << "\n";
  return ok ? 0 : 2;
}

int run_shift_apply(Common& common, const std::string& field_flag, const std::string& spec_path,
                    const std::string& payload) {
  OwnedField field = resolve_field(common, field_flag);
  Json spec = !spec_path.empty() ? load_json(spec_path) : common.config.at("shift");
  OwnedField out;
  sd_status status = sd_shift_apply(field.ptr, spec.dump().c_str(), &out.ptr);
  if (status != SD_OK) fail_status("shift-apply", status);
  std::string fmt = !payload.empty() ? payload : common.config.value("payload", "binary");
  if (sd_field_save(out.ptr, common.out("shifted.json").string().c_str(), fmt.c_str()) != SD_OK)
    fail_status("save", SD_ERR_IO);
  std::cout << "shift-apply: wrote " << common.out("shifted.json").string() << "\n";
  return 0;
}

int run_apply_t(Common& common, const std::string& field_flag, const std::string& kernel_path,
                const std::string& payload) {
  OwnedField field = resolve_field(common, field_flag);
  Json kernel = !kernel_path.empty() ? load_json(kernel_path) : common.config.at("kernel");
  OwnedField out;
  sd_status status = sd_apply_t(field.ptr, kernel.dump().c_str(), &out.ptr);
  if (status != SD_OK) fail_status("apply-t", status);
  std::string fmt = !payload.empty() ? payload : common.config.value("payload", "binary");
  if (sd_field_save(out.ptr, common.out("transformed.json").string().c_str(), fmt.c_str()) !=
      SD_OK)
    fail_status("save", SD_ERR_IO);
  std::cout << "apply-t: wrote " << common.out("transformed.json").string() << "\n";
  return 0;
}

int run_dominate(Common& common, const std::string& field_flag, const std::string& kernel_path,
                 const std::string& nu, int max_k) {
  OwnedField field = resolve_field(common, field_flag);
  Json params;
  params["kernel"] = !kernel_path.empty() ? load_json(kernel_path) : common.config.at("kernel");
  params["nu"] = !nu.empty() ? Json(nu) : common.config.value("nu", Json("1/2"));
  params["K"] = max_k >= 0 ? max_k : common.config.value("K", 8);
  if (common.config.contains("base")) params["base"] = common.config.at("base");
  OwnedString report;
  sd_status status = sd_dominate(field.ptr, params.dump().c_str(), &report.ptr);
  if (status != SD_OK) fail_status("dominate", status);
  Json j = Json::parse(report.ptr);
  if (common.want_json()) write_text(common.out("dominate.json"), report.ptr);
  if (common.want_csv()) {
    const Json& lhs = j.at("lhs_field");
    const Json& rhs = j.at("rhs_field");
    std::string csv = "cell,lhs,rhs\n";
    for (size_t c = 0; c < lhs.size(); ++c)
      csv += std::to_string(c) + "," + lhs[c].dump() + "," + rhs[c].dump() + "\n";
    write_text(common.out("dominate_cells.csv"), csv);
    std::string mass = "k,mass\n";
    const Json& per_k = j.at("per_k_mass");
    for (size_t k = 0; k < per_k.size(); ++k)
      mass += std::to_string(k) + "," + per_k[k].dump() + "\n";
    write_text(common.out("dominate_per_k.csv"), mass);
  }
  std::cout << "dominate: C_emp=" << j.at("C_emp").dump()
            << " collections_ok=" << j.at("collections_ok").dump() << "\n";
  return j.at("collections_ok").get<bool>() ? 0 : 2;
}

int run_a2(Common& common, const std::string& kernel_path, double p,
           const std::string& exponents, std::optional<uint64_t> seed) {
  Json params;
  params["kernel"] = !kernel_path.empty() ? load_json(kernel_path) : common.config.at("kernel");
  params["grid"] = common.config.at("grid");
  params["p"] = p > 0 ? p : common.config.value("p", 2.0);
  if (!exponents.empty()) {
    Json list = Json::array();
    std::stringstream ss(exponents);
    std::string item;
    while (std::getline(ss, item, ',')) list.push_back(std::stod(item));
    params["exponents"] = list;
  } else {
    params["exponents"] = common.config.at("exponents");
  }
  params["seed"] = seed ? *seed : common.config.value("seed", 1);
  OwnedString report;
  sd_status status = sd_a2_experiment(params.dump().c_str(), &report.ptr);
  if (status != SD_OK) fail_status("a2", status);
  Json j = Json::parse(report.ptr);
  if (common.want_json()) write_text(common.out("a2.json"), report.ptr);
  if (common.want_csv()) {
    std::string csv = "a,ap,ratio\n";
    for (const Json& row : j.at("rows"))
      csv += row.at("a").dump() + "," + row.at("ap").dump() + "," + row.at("ratio").dump() +
             "\n";
    write_text(common.out("a2.csv"), csv);
  }
  std::cout << "a2: slope=" << j.at("fitted_slope").dump() << "\n";
  return 0;
}

int run_weights(Common& common, const std::string& generator, const std::string& weight_file,
                const std::string& p_list, bool a_infty) {
  Json params;
  params["grid"] = common.config.at("grid");
  if (!weight_file.empty()) {
    params["weight"] = weight_file;
  } else if (!generator.empty()) {
    // e.g. "power a=0.6"
    std::stringstream ss(generator);
    std::string kind;
    ss >> kind;
    Json gen{{"kind", kind}};
    std::string kv;
    while (ss >> kv) {
      size_t eq = kv.find('=');
      if (eq == std::string::npos) throw CliError("bad generator parameter '" + kv + "'");
      gen[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    params["weight"] = Json{{"generator", gen}};
  } else if (common.config.contains("weight")) {
    params["weight"] = common.config.at("weight");
  } else {
    throw CliError("weights needs --weight, --generator, or config weight");
  }
  if (!p_list.empty()) {
    Json list = Json::array();
    std::stringstream ss(p_list);
    std::string item;
    while (std::getline(ss, item, ',')) list.push_back(std::stod(item));
    params["p"] = list;
  } else if (common.config.contains("p")) {
    params["p"] = common.config.at("p");
  }
  params["a_infty"] = a_infty || common.config.value("a_infty", false);
  OwnedString report;
  sd_status status = sd_weights_report(params.dump().c_str(), &report.ptr);
  if (status != SD_OK) fail_status("weights", status);
  Json j = Json::parse(report.ptr);
  if (common.want_json()) write_text(common.out("weights.json"), report.ptr);
  if (common.want_csv()) {
    std::string csv = "p,value,family_size\n";
    for (const Json& r : j.at("ap"))
      csv += r.at("p").dump() + "," + r.at("value").dump() + "," +
             r.at("cube_family_size").dump() + "\n";
    if (j.contains("a_infty"))
      csv += "inf," + j.at("a_infty").at("value").dump() + "," +
             j.at("a_infty").at("cube_family_size").dump() + "\n";
    write_text(common.out("weights.csv"), csv);
  }
  std::cout << "weights: wrote " << common.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse domination of dyadic operators: decompositions, shifts, weights"};
  app.require_subcommand(1);

  Common common;
  std::string field_flag, collection, spec_path, kernel_path, nu, exponents, generator, p_list;
  std::string payload, weight_file;
  int max_k = -1;
  double p = 0.0;
  bool a_infty = false;
  std::optional<uint64_t> seed;

  CLI::App* decompose = app.add_subcommand("decompose", "stopping-time sparse decomposition");
  add_common(decompose, common);
  decompose->add_option("--field", field_flag, "field file (header JSON)");
  decompose->add_option("--nu", nu, "witness density, e.g. 1/2");
  decompose->add_option("--seed", seed, "generator seed override");

  CLI::App* verify = app.add_subcommand("verify", "check a stored decomposition against a field");
  add_common(verify, common);
  verify->add_option("--field", field_flag, "field file");
  verify->add_option("--collection", collection, "decomposition JSON");

  CLI::App* shift = app.add_subcommand("shift-apply", "apply a positive dyadic shift");
  add_common(shift, common);
  shift->add_option("--field", field_flag, "field file");
  shift->add_option("--spec", spec_path, "shift spec JSON file");
  shift->add_option("--payload", payload, "binary|csv");

  CLI::App* applyt = app.add_subcommand("apply-t", "apply the discretized singular integral");
  add_common(applyt, common);
  applyt->add_option("--field", field_flag, "field file");
  applyt->add_option("--kernel", kernel_path, "kernel spec JSON file");
  applyt->add_option("--payload", payload, "binary|csv");

  CLI::App* dominate = app.add_subcommand("dominate", "pointwise sparse domination pipeline");
  add_common(dominate, common);
  dominate->add_option("--field", field_flag, "field file");
  dominate->add_option("--kernel", kernel_path, "kernel spec JSON file");
  dominate->add_option("--nu", nu, "witness density");
  dominate->add_option("--K", max_k, "series truncation");
  dominate->add_option("--seed", seed, "generator seed override");

  CLI::App* a2 = app.add_subcommand("a2", "weighted-norm growth experiment");
  add_common(a2, common);
  a2->add_option("--kernel", kernel_path, "kernel spec JSON file");
  a2->add_option("--p", p, "Lebesgue exponent");
  a2->add_option("--exponents", exponents, "comma list of power-weight exponents");
  a2->add_option("--seed", seed, "bank seed");

  CLI::App* weights = app.add_subcommand("weights", "Muckenhoupt characteristics");
  add_common(weights, common);
  weights->add_option("--generator", generator, "e.g. \"power a=0.6\"");
  weights->add_option("--weight", weight_file, "weight field file (header JSON)");
  weights->add_option("--p", p_list, "comma list of exponents");
  weights->add_flag("--a-infty", a_infty, "also compute the Fujii-Wilson characteristic");

  CLI11_PARSE(app, argc, argv);

  try {
    common.load();
    if (seed && !a2->parsed()) common.config["seed"] = *seed;
    if (decompose->parsed()) return run_decompose(common, field_flag, nu);
    if (verify->parsed()) return run_verify(common, field_flag, collection);
    if (shift->parsed()) return run_shift_apply(common, field_flag, spec_path, payload);
    if (applyt->parsed()) return run_apply_t(common, field_flag, kernel_path, payload);
    if (dominate->parsed()) return run_dominate(common, field_flag, kernel_path, nu, max_k);
    if (a2->parsed()) return run_a2(common, kernel_path, p, exponents, seed);
    if (weights->parsed()) return run_weights(common, generator, weight_file, p_list, a_infty);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
