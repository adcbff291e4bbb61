#pragma once

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "divfan/corpus.hpp"

namespace divfan::cli {

using json = nlohmann::json;

enum Exit : int { ok = 0, schema = 1, validation = 2, internal = 3 };

struct Options {
  std::string command;
  std::string input;
  std::string output;
  std::string incidence;
  std::string relabel;
  std::vector<std::string> params;
  bool table = false;
  bool strict = false;
  bool verify = false;
};

namespace detail {

inline corpus::Parameters parse_params(const std::vector<std::string>& raw) {
  corpus::Parameters out;
  for (const auto& s : raw) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--param expects name=value, got '" + s + "'");
    out[s.substr(0, eq)] = parse_rational(s.substr(eq + 1));
  }
  return out;
}

/// Corpus entries are found by file name or by entry name.
inline std::string resolve(const std::string& input) {
  if (std::filesystem::exists(input)) return input;
  const auto candidate = std::filesystem::path(corpus::default_dir) / (input + ".json");
  if (std::filesystem::exists(candidate)) return candidate.string();
  throw InputError("no such file or corpus entry: " + input);
}

inline Incidence incidence_from(const json& j) {
  Incidence out;
  for (const auto& group : j.is_object() ? io::require(j, "incidence") : j) {
    std::set<DivisorLabel> g;
    for (const auto& k : group) g.insert(io::label_from(k.get<std::string>()));
    out.push_back(std::move(g));
  }
  return out;
}

inline std::map<std::string, std::string> relabel_from(const json& j) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : (j.contains("relabel") ? j.at("relabel") : j).items()) out[k] = v.get<std::string>();
  return out;
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  int run() {
    const auto& c = o_.command;
    if (c == "examples") return examples();
    doc_ = corpus::read_json(resolve(o_.input));
    if (c == "validate") return validate();
    if (c == "construct") return construct();
    if (c == "downgrade") return downgrade_cmd();
    if (c == "crosscheck") return crosscheck_cmd();
    if (c == "slices") return slices();
    if (c == "render") return render();
    throw InputError("unknown command '" + c + "'");
  }

 private:
  bool is_entry() const { return doc_.value("kind", std::string()) == "spherical" || doc_.value("kind", std::string()) == "toric"; }

  corpus::Entry entry() const {
    if (!is_entry()) throw InputError("expected a corpus entry (kind 'spherical' or 'toric')");
    return corpus::load_entry(doc_, o_.input, parse_params(o_.params));
  }

  std::optional<Incidence> incidence() const {
    if (o_.incidence.empty()) return std::nullopt;
    return incidence_from(corpus::read_json(o_.incidence));
  }

  void emit(const std::string& text) {
    if (o_.output.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(o_.output);
    if (!f) throw InputError("cannot write " + o_.output);
    f << text;
  }
  void emit(const json& j) { emit(j.dump(2) + "\n"); }

  /// Fan checks with warnings; --strict turns warnings into failures.
  int report_check(const Check& c, json extra = json::object()) {
    extra["ok"] = c.ok;
    extra["warnings"] = c.warnings;
    if (!c.ok) extra["witness"] = c.witness;
    emit(extra);
    if (!c.ok) return validation;
    return o_.strict && !c.warnings.empty() ? validation : ok;
  }

  DivisorialFan fan_of_input() const {
    if (is_entry()) return corpus::produce(entry());
    if (const auto k = doc_.value("kind", std::string()); k == "construction" || k == "downgrade") return io::divisorial_fan_from(io::require(doc_, "divisorial_fan"));
    return io::divisorial_fan_from(doc_);
  }

  int validate() {
    const std::string kind = doc_.value("kind", std::string());
    if (kind == "spherical") {
      const auto e = entry();
      const Report r = validate_colored_fan(*e.colored_fan, *e.datum);
      emit(json{{"ok", r.ok}, {"kind", "colored_fan"}, {"messages", r.messages}, {"witness", r.witness},
                {"complete", r.ok && is_complete(*e.colored_fan, *e.datum)}});
      return r.ok ? ok : validation;
    }
    if (kind == "toric") {
      const auto e = entry();
      const Fan f(e.toric_model->split.middle_rank(), e.toric_model->cones);
      const auto v = f.first_violation();
      const SplitReport sr = verify_splitting(e.toric_model->split);
      json j{{"ok", !v && sr.ok}, {"kind", "toric_model"}, {"split_violations", sr.violations}};
      if (v) j["witness"] = {{"first", f.maximal_cones()[v->first].key()}, {"second", f.maximal_cones()[v->second].key()}};
      emit(j);
      return !v && sr.ok ? ok : validation;
    }
    const DivisorialFan f = io::divisorial_fan_from(doc_);
    const auto inc = incidence();
    return report_check(check_divisorial_fan(f, inc ? &*inc : nullptr), {{"kind", "divisorial_fan"}});
  }

  int construct() {
    const auto e = entry();
    if (e.kind != "spherical") throw InputError("construct needs a spherical entry");
    const ConstructionResult r = build_general(*e.colored_fan, *e.datum);
    if (o_.table) {
      emit(render_table(make_table(corpus::presented(e, r.fan), e.table)));
      return ok;
    }
    emit(io::to_json(r));
    return ok;
  }

  int downgrade_cmd() {
    const auto e = entry();
    if (!e.toric_model) throw InputError("entry has no toric model");
    const DowngradeResult r = downgrade(*e.toric_model);
    if (o_.table) {
      emit(render_table(make_table(r.fan, e.table)));
      return ok;
    }
    emit(json{{"schema", io::schema_version},
              {"kind", "downgrade"},
              {"base_fan", io::to_json(r.base)},
              {"refined_fan", io::to_json(r.refined_fan)},
              {"divisorial_fan", io::to_json(r.fan)}});
    return ok;
  }

  int crosscheck_cmd() {
    const auto e = entry();
    if (!e.datum || !e.toric_model) throw InputError("crosscheck needs a spherical entry with a toric model");
    auto relabel = e.relabel;
    if (!o_.relabel.empty()) relabel = relabel_from(corpus::read_json(o_.relabel));
    const FanDiff d = crosscheck(*e.datum, *e.colored_fan, *e.toric_model, relabel, e.kernel_map);
    emit(io::to_json(d));
    return d.equal() ? ok : validation;
  }

  int slices() {
    const DivisorialFan f = fan_of_input();
    if (o_.table) {
      TableOptions t;
      if (is_entry()) t = entry().table;
      emit(render_table(make_table(f, t)));
      return ok;
    }
    json out = json::object();
    for (const auto& [label, s] : f.slices()) out[label.key()] = io::to_json(s);
    emit(out);
    return ok;
  }

  int render() {
    const DivisorialFan f = fan_of_input();
    if (o_.table) {
      TableOptions t;
      if (is_entry()) t = entry().table;
      emit(render_table(make_table(f, t)));
      return ok;
    }
    std::ostringstream s;
    for (std::size_t k = 0; k < f.maximal().size(); ++k)
      s << f.id(k) << ": " << f.maximal()[k].normalized().to_string() << "\n";
    emit(s.str());
    return ok;
  }

  int examples() {
    const std::string dir = o_.input.empty() ? corpus::default_dir : o_.input;
    json out = json::array();
    bool all = true;
    for (const auto& e : corpus::load_corpus(dir)) {
      json row{{"name", e.name}, {"kind", e.kind}, {"path", e.path}};
      if (o_.verify) {
        try {
          const auto v = corpus::verify(e);
          row["ok"] = v.ok();
          row["checked"] = v.checked;
          row["failures"] = v.failures;
        } catch (const Error& err) {
          row["ok"] = false;
          row["failures"] = {e.name + ": " + err.what()};
        }
        all = all && row["ok"].get<bool>();
      }
      out.push_back(row);
    }
    emit(out);
    return all ? ok : validation;
  }

  const Options& o_;
  std::ostream& out_;
  json doc_;
};

inline json error_json(const char* kind, const std::string& message, const json& witness = nullptr) {
  json j{{"error", kind}, {"message", message}};
  if (!witness.is_null()) j["witness"] = witness;
  return j;
}

}  // namespace detail

inline int run(Options o, std::ostream& out, std::ostream& err) {
  try {
    return detail::Runner(o, out).run();
  } catch (const ValidationError& e) {
    err << detail::error_json("validation", e.what(), e.witness()).dump() << "\n";
    return validation;
  } catch (const InputError& e) {
    err << detail::error_json("schema", e.what()).dump() << "\n";
    return schema;
  } catch (const nlohmann::json::exception& e) {
    err << detail::error_json("schema", e.what()).dump() << "\n";
    return schema;
  } catch (const std::exception& e) {
    err << detail::error_json("internal", e.what()).dump() << "\n";
    return internal;
  }
}

inline int main(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Divisorial fans of spherical embeddings"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("input", o.input, needs_input ? "input JSON or corpus entry name" : "corpus directory");
    if (needs_input) in->required();
    sub->add_option("-o,--output", o.output, "write here instead of stdout");
    sub->add_option("--param", o.params, "override an entry parameter, name=value");
    sub->add_flag("--table", o.table, "one-point table layout");
    sub->add_flag("--strict", o.strict, "fail on face conditions that were not fully checked");
  };
  common(app.add_subcommand("validate", "check a colored fan, toric model or divisorial fan"), true);
  common(app.add_subcommand("construct", "divisorial fan of a colored fan"), true);
  common(app.add_subcommand("downgrade", "divisorial fan of a toric model"), true);
  common(app.add_subcommand("crosscheck", "compare construction and downgrade"), true);
  common(app.add_subcommand("slices", "slices of a divisorial fan"), true);
  common(app.add_subcommand("render", "text rendering of a divisorial fan"), true);
  auto* ex = app.add_subcommand("examples", "list or verify the corpus");
  common(ex, false);
  ex->add_flag("--verify", o.verify, "compare each entry with its expected values");
  app.get_subcommand("validate")->add_option("--incidence", o.incidence, "label incidence sets");
  app.get_subcommand("crosscheck")->add_option("--relabel", o.relabel, "label bijection for the comparison");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << detail::error_json("schema", e.what()).dump() << "\n";
    return schema;
  }
  o.command = app.get_subcommands().front()->get_name();
  return run(o, out, err);
}

}  // namespace divfan::cli
