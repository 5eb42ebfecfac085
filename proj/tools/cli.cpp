#include "cli.hpp"

#include <omp.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cbundle/conic.hpp"
#include "cbundle/density.hpp"
#include "cbundle/errors.hpp"
#include "cbundle/io.hpp"
#include "cbundle/oracle.hpp"
#include "cbundle/pic_lattice.hpp"
#include "cbundle/propagate.hpp"
#include "cbundle/surface.hpp"
#include "manifest.hpp"

#ifndef CBUNDLE_VERSION
#define CBUNDLE_VERSION "0.0.0"
#endif

namespace cbundle::cli {

namespace {

using io::json;

struct Options {
  int threads = 0;
  std::string manifest;
  // lattice
  int degree = 0;
  std::string kind;
  std::string class_json;
  // surface
  std::string surface;
  std::string point;
  std::string points;
  std::string out;
  std::string stats;
  int depth = 3;
  long sample_bound = 3;
  std::string height_cap = "1000000";
  std::string axes = "0,1";
  std::optional<int> start_axis;
  long height = 1;
  std::string degrees = "3,3,3";
  int axis = 0;
  // fibreproduct
  std::string r1, r2;
  // replay
  std::string replay_file;
};

// Output sink that records what a command produced.
class Run {
 public:
  explicit Run(std::string command) { manifest_.command = std::move(command); }

  std::ostringstream& stdout_buffer() { return out_; }

  void input(const std::string& path) { manifest_.inputs[path] = sha256_file(path); }

  void write_output(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidInputError("cannot write '" + path + "'");
    f << bytes;
    f.close();
    manifest_.outputs[path] = sha256_hex(bytes);
  }

  RunManifest finish(const std::vector<std::string>& argv) {
    manifest_.version = CBUNDLE_VERSION;
    manifest_.argv = argv;
    manifest_.outputs[kStdoutKey] = sha256_hex(out_.str());
    return manifest_;
  }

 private:
  RunManifest manifest_;
  std::ostringstream out_;
};

json read_json_file(Run& run, const std::string& path) {
  run.input(path);
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InvalidInputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<long> parse_int_list(const std::string& text, std::size_t expected, const std::string& what) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Int v = parse_integer(item);
    if (!v.fits_slong_p()) throw InvalidInputError(what + " entry out of range");
    out.push_back(v.get_si());
  }
  if (out.size() != expected)
    throw InvalidInputError(what + " needs " + std::to_string(expected) + " comma-separated integers");
  return out;
}

void cmd_lattice_enumerate(const Options& o, Run& run) {
  const auto lat = pic::Lattice::of_degree(o.degree);
  std::vector<pic::DivisorClass> classes;
  if (o.kind == "exceptional")
    classes = pic::enumerate_exceptional(lat);
  else if (o.kind == "conic")
    classes = pic::enumerate_conic_classes(lat);
  else
    throw InvalidInputError("--kind must be 'exceptional' or 'conic'");
  json arr = json::array();
  for (const auto& c : classes) arr.push_back(io::to_json(c));
  run.stdout_buffer() << io::dump({{"degree", o.degree}, {"kind", o.kind}, {"count", classes.size()}, {"classes", arr}});
}

void cmd_lattice_second(const Options& o, Run& run) {
  const auto lat = pic::Lattice::of_degree(o.degree);
  json parsed;
  try {
    parsed = json::parse(o.class_json);
  } catch (const json::parse_error& e) {
    throw InvalidInputError(std::string("--class is not valid JSON: ") + e.what());
  }
  const auto c = io::class_from_json(parsed);
  const auto d = pic::second_fibration(lat, c);
  const auto k = pic::canonical_class(lat);
  run.stdout_buffer() << io::dump({{"degree", o.degree},
                                   {"conic", io::to_json(c)},
                                   {"second", io::to_json(d)},
                                   {"self_intersection", pic::intersect(lat, d, d).get_si()},
                                   {"anticanonical_degree", Int(-pic::intersect(lat, k, d)).get_si()},
                                   {"fibre_intersection", pic::intersect(lat, c, d).get_si()},
                                   {"arithmetic_genus", pic::arithmetic_genus(lat, d).get_si()}});
}

void cmd_lattice_audit(const Options& o, Run& run) {
  const auto lat = pic::Lattice::of_degree(o.degree);
  run.stdout_buffer() << io::dump(io::to_json(pic::audit_second_fibrations(lat)));
}

std::string csv_text(ModelKind kind, const std::vector<SurfacePoint>& pts) {
  std::ostringstream os;
  io::write_points_csv(os, kind, pts);
  return os.str();
}

void cmd_surface_propagate(const Options& o, Run& run) {
  if (o.out.empty()) throw InvalidInputError("--out is required");
  const auto s = io::surface_from_json(read_json_file(run, o.surface));
  require_admissible(s);
  const auto seed = io::point_from_json(read_json_file(run, o.point));
  PropagationConfig cfg;
  cfg.depth = o.depth;
  cfg.sample_bound = o.sample_bound;
  cfg.height_cap = parse_integer(o.height_cap);
  const auto axes = parse_int_list(o.axes, 2, "--axes");
  cfg.axes = {static_cast<int>(axes[0]), static_cast<int>(axes[1])};
  cfg.start_axis = o.start_axis;
  const auto res = propagate(s, seed, cfg);
  run.write_output(o.out, csv_text(kind_of(s), res.points));
  json rounds = json::array();
  for (const auto& r : res.rounds) rounds.push_back(io::to_json(r));
  json summary = {{"points", res.points.size()},
                  {"start_axis", res.start_axis},
                  {"axes", json::array({cfg.axes[0], cfg.axes[1]})},
                  {"rounds", rounds}};
  if (!o.stats.empty()) run.write_output(o.stats, io::dump(summary));
  run.stdout_buffer() << io::dump(summary);
}

void cmd_surface_oracle(const Options& o, Run& run) {
  if (o.out.empty()) throw InvalidInputError("--out is required");
  const auto s = io::surface_from_json(read_json_file(run, o.surface));
  const auto pts = oracle::enumerate_points(s, o.height);
  run.write_output(o.out, csv_text(kind_of(s), pts));
  run.stdout_buffer() << io::dump({{"height", o.height}, {"points", pts.size()}});
}

void cmd_surface_density(const Options& o, Run& run) {
  run.input(o.points);
  std::istringstream in(read_file(o.points));
  ModelKind kind{};
  const auto pts = io::read_points_csv(in, kind);
  const auto d = parse_int_list(o.degrees, 3, "--degrees");
  for (long x : d)
    if (x < 0 || x > 32) throw InvalidInputError("--degrees entries must be in [0, 32]");
  const auto v = density_witness(kind, pts, {static_cast<int>(d[0]), static_cast<int>(d[1]), static_cast<int>(d[2])});
  json j = io::to_json(v);
  j["points"] = pts.size();
  j["degrees"] = d;
  run.stdout_buffer() << io::dump(j);
  if (!o.out.empty()) run.write_output(o.out, io::dump(j));
}

void cmd_surface_discriminant(const Options& o, Run& run) {
  const auto s = io::surface_from_json(read_json_file(run, o.surface));
  const auto disc = discriminant_form(s, o.axis);
  json roots = json::array();
  for (const auto& r : rational_roots(disc))
    roots.push_back({{"point", json::array({r.point[0].get_str(), r.point[1].get_str()})},
                     {"multiplicity", r.multiplicity}});
  json j = {{"axis", o.axis},
            {"form", io::to_json(disc)},
            {"degree", disc.degree()},
            {"squarefree", is_squarefree(disc)},
            {"rational_roots", roots}};
  run.stdout_buffer() << io::dump(j);
  if (!o.out.empty()) run.write_output(o.out, io::dump(j));
}

void cmd_fibreproduct(const Options& o, Run& run) {
  const auto r1 = io::form_from_csv_text(o.r1);
  const auto r2 = io::form_from_csv_text(o.r2);
  const auto rep = analyse_fibre_product(r1, r2);
  json j = io::to_json(rep);
  j["r1"] = io::to_json(r1);
  j["r2"] = io::to_json(r2);
  run.stdout_buffer() << io::dump(j);
  if (!o.out.empty()) run.write_output(o.out, io::dump(j));
}

std::vector<std::string> strip_option(std::vector<std::string> argv, const std::string& name) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == name) {
      ++i;
      continue;
    }
    if (argv[i].rfind(name + "=", 0) == 0) continue;
    out.push_back(argv[i]);
  }
  return out;
}

int cmd_replay(const Options& o, std::ostream& out, std::ostream& err) {
  const auto m = manifest_from_json(json::parse(read_file(o.replay_file)));
  std::vector<std::string> argv = strip_option(strip_option(m.argv, "--threads"), "--manifest");
  if (o.threads > 0) {
    argv.push_back("--threads");
    argv.push_back(std::to_string(o.threads));
  }
  json report = {{"manifest", o.replay_file}, {"command", m.command}, {"threads", o.threads}};
  json inputs = json::object();
  bool inputs_ok = true;
  for (const auto& [path, digest] : m.inputs) {
    const bool same = sha256_file(path) == digest;
    inputs[path] = same;
    inputs_ok = inputs_ok && same;
  }
  report["inputs_match"] = inputs;
  if (!inputs_ok) {
    out << io::dump(report);
    err << "replay: inputs changed since the manifest was written\n";
    return kUsage;
  }
  std::ostringstream captured;
  std::ostringstream captured_err;
  const int code = run(argv, captured, captured_err, false);
  report["exit_code"] = code;
  json outputs = json::object();
  bool all = code == kOk;
  for (const auto& [path, digest] : m.outputs) {
    const std::string now = path == kStdoutKey ? sha256_hex(captured.str()) : sha256_file(path);
    outputs[path] = now == digest;
    all = all && now == digest;
  }
  report["outputs_match"] = outputs;
  report["identical"] = all;
  out << io::dump(report);
  if (!all) err << "replay: outputs differ from the manifest\n" << captured_err.str();
  return all ? kOk : kInternal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool write_manifest) {
  Options o;
  CLI::App app{"Exact tools for double conic bundle surfaces and del Pezzo Picard lattices", "cbundle"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--manifest", o.manifest, "Where to write the run manifest");

  auto* lattice = app.add_subcommand("lattice", "Picard lattice computations")->require_subcommand(1);
  auto* l_enum = lattice->add_subcommand("enumerate", "Exceptional or conic classes");
  l_enum->add_option("--degree", o.degree)->required();
  l_enum->add_option("--kind", o.kind)->required();
  l_enum->add_option("--out", o.out);
  auto* l_second = lattice->add_subcommand("second-fibration", "D = -(4/d)K - C");
  l_second->add_option("--degree", o.degree)->required();
  l_second->add_option("--class", o.class_json)->required();
  l_second->add_option("--out", o.out);
  auto* l_audit = lattice->add_subcommand("audit", "Audit every conic class of a degree");
  l_audit->add_option("--degree", o.degree)->required();
  l_audit->add_option("--out", o.out);

  auto* surface = app.add_subcommand("surface", "Surface models")->require_subcommand(1);
  auto* s_prop = surface->add_subcommand("propagate", "Alternating-fibration point propagation");
  s_prop->add_option("--surface", o.surface)->required();
  s_prop->add_option("--point", o.point)->required();
  s_prop->add_option("--depth", o.depth)->required();
  s_prop->add_option("--sample-bound", o.sample_bound)->required();
  s_prop->add_option("--height-cap", o.height_cap)->required();
  s_prop->add_option("--out", o.out)->required();
  s_prop->add_option("--axes", o.axes, "Two fibrations to alternate, e.g. 0,1");
  s_prop->add_option("--start-axis", o.start_axis);
  s_prop->add_option("--stats", o.stats, "Also write the round statistics JSON here");
  auto* s_oracle = surface->add_subcommand("oracle", "Exhaustive height-bounded point search");
  s_oracle->add_option("--surface", o.surface)->required();
  s_oracle->add_option("--height", o.height)->required();
  s_oracle->add_option("--out", o.out)->required();
  auto* s_density = surface->add_subcommand("density", "Zariski-density witness for a point set");
  s_density->add_option("--points", o.points)->required();
  s_density->add_option("--degrees", o.degrees)->required();
  s_density->add_option("--out", o.out);
  auto* s_disc = surface->add_subcommand("discriminant", "Discriminant form of a fibration");
  s_disc->add_option("--surface", o.surface)->required();
  s_disc->add_option("--axis", o.axis)->required();
  s_disc->add_option("--out", o.out);

  auto* fp = app.add_subcommand("fibreproduct", "Fibre product of two double covers of P^1");
  fp->add_option("--r1", o.r1, "Coefficients, descending powers of u")->required();
  fp->add_option("--r2", o.r2)->required();
  fp->add_option("--out", o.out);

  auto* replay = app.add_subcommand("replay", "Re-run a manifest and compare outputs");
  replay->add_option("manifest-file", o.replay_file)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (o.threads > 0) omp_set_num_threads(o.threads);

  if (replay->parsed()) {
    try {
      return cmd_replay(o, out, err);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const std::exception& e) {
      err << "internal error: " << e.what() << "\n";
      return kInternal;
    }
  }

  std::string command;
  for (const CLI::App* a = &app; !a->get_subcommands().empty();) {
    a = a->get_subcommands().front();
    command += (command.empty() ? "" : " ") + a->get_name();
  }
  Run r(command);
  try {
    if (l_enum->parsed()) cmd_lattice_enumerate(o, r);
    else if (l_second->parsed()) cmd_lattice_second(o, r);
    else if (l_audit->parsed()) cmd_lattice_audit(o, r);
    else if (s_prop->parsed()) cmd_surface_propagate(o, r);
    else if (s_oracle->parsed()) cmd_surface_oracle(o, r);
    else if (s_density->parsed()) cmd_surface_density(o, r);
    else if (s_disc->parsed()) cmd_surface_discriminant(o, r);
    else if (fp->parsed()) cmd_fibreproduct(o, r);
    if (!o.out.empty() && !s_prop->parsed() && !s_oracle->parsed() && !s_density->parsed() &&
        !s_disc->parsed() && !fp->parsed())
      r.write_output(o.out, r.stdout_buffer().str());
  } catch (const InadmissibleSurfaceError& e) {
    err << "error: " << e.what() << "\nwitness: " << e.witness() << "\n";
    return kInadmissible;
  } catch (const DegenerateFibreError& e) {
    err << "error: " << e.what() << "\nwitness: " << e.witness() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }

  out << r.stdout_buffer().str();
  if (write_manifest) {
    const auto m = r.finish(args);
    const std::string text = io::dump(to_json(m));
    std::string path = o.manifest;
    if (path.empty() && !o.out.empty()) path = o.out + ".manifest.json";
    if (path.empty()) {
      err << text;
    } else {
      std::ofstream f(path, std::ios::binary | std::ios::trunc);
      if (!f) {
        err << "error: cannot write manifest '" << path << "'\n";
        return kUsage;
      }
      f << text;
    }
  }
  return kOk;
}

}  // namespace cbundle::cli
