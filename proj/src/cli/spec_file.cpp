#include "qline/cli/spec_file.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <ostream>
#include <set>

#include "qline/dataset.hpp"

namespace qline::cli {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& section, const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || end != t.data() + t.size() || t.empty()) {
    throw SpecFileError("[" + section + "] " + key + ": not a number: '" + text + "'");
  }
  return value;
}

std::size_t parse_count(const std::string& section, const std::string& key,
                        const std::string& text) {
  const std::string t = trim(text);
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || end != t.data() + t.size() || t.empty()) {
    throw SpecFileError("[" + section + "] " + key + ": not a count: '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& section, const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  throw SpecFileError("[" + section + "] " + key + ": not a boolean: '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void parse_fixed(const pt::ptree& section, Parameters& p) {
  for (const auto& [key, node] : section) {
    const std::string& v = node.data();
    if (key == "process") p.qubit.process = parse_process(trim(v));
    else if (key == "omega") p.qubit.omega = parse_double("fixed", key, v);
    else if (key == "lambda") p.qubit.lambda = parse_double("fixed", key, v);
    else if (key == "shape") p.smearing.shape = parse_shape(trim(v));
    else if (key == "sigma") p.smearing.sigma = parse_double("fixed", key, v);
    else if (key == "cutoff") p.cutoff.model = parse_cutoff(trim(v));
    else if (key == "eps") p.cutoff.epsilon = parse_double("fixed", key, v);
    else if (key == "r") p.switching.ramp = parse_double("fixed", key, v);
    else if (key == "T") p.switching.plateau = parse_double("fixed", key, v);
    else throw SpecFileError("[fixed]: unknown key '" + key + "'");
  }
}

sweep::AxisGrid parse_axis_section(const std::string& name, const pt::ptree& section) {
  sweep::AxisGrid grid;
  grid.axis = sweep::parse_axis(name.substr(5));
  std::set<std::string> seen;
  for (const auto& [key, node] : section) {
    const std::string& v = node.data();
    if (key == "min") grid.lower = parse_double(name, key, v);
    else if (key == "max") grid.upper = parse_double(name, key, v);
    else if (key == "points") grid.points = parse_count(name, key, v);
    else if (key == "spacing") grid.spacing = sweep::parse_spacing(trim(v));
    else throw SpecFileError("[" + name + "]: unknown key '" + key + "'");
    seen.insert(key);
  }
  for (const char* required : {"min", "max", "points"}) {
    if (seen.count(required) == 0) {
      throw SpecFileError("[" + name + "]: missing key '" + required + "'");
    }
  }
  return grid;
}

void parse_models(const pt::ptree& section, sweep::SweepSpec& spec) {
  std::string set;
  for (const auto& [key, node] : section) {
    if (key == "compare") spec.comparison = sweep::parse_comparison(trim(node.data()));
    else if (key == "set") set = node.data();
    else throw SpecFileError("[models]: unknown key '" + key + "'");
  }
  if (set.empty()) return;
  const auto names = split_list(set);
  if (spec.comparison == sweep::Comparison::Shapes) {
    spec.shapes.clear();
    for (const auto& n : names) spec.shapes.push_back(parse_shape(n));
  } else {
    spec.cutoffs.clear();
    for (const auto& n : names) spec.cutoffs.push_back(parse_cutoff(n));
  }
}

}  // namespace

SweepFile parse_spec(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw SpecFileError(std::string("spec syntax: ") + e.what());
  }

  SweepFile file;
  file.spec.fixed = default_parameters();
  for (const auto& [name, section] : tree) {
    if (section.empty() && !section.data().empty()) {
      throw SpecFileError("key '" + name + "' outside any section");
    }
    if (name == "sweep") {
      for (const auto& [key, node] : section) {
        if (key != "label") throw SpecFileError("[sweep]: unknown key '" + key + "'");
        file.spec.label = trim(node.data());
      }
    } else if (name == "fixed") {
      parse_fixed(section, file.spec.fixed);
    } else if (name.rfind("axis.", 0) == 0) {
      file.spec.axes.push_back(parse_axis_section(name, section));
    } else if (name == "models") {
      parse_models(section, file.spec);
    } else if (name == "output") {
      for (const auto& [key, node] : section) {
        if (key == "path") file.output_path = trim(node.data());
        else if (key == "continue_on_error")
          file.spec.continue_on_error = parse_bool("output", key, node.data());
        else if (key == "threads") file.spec.threads = parse_count("output", key, node.data());
        else throw SpecFileError("[output]: unknown key '" + key + "'");
      }
    } else {
      throw SpecFileError("unknown section [" + name + "]");
    }
  }
  if (file.spec.axes.empty()) throw SpecFileError("no [axis.<name>] sections");
  sweep::validate(file.spec);
  return file;
}

SweepFile read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecFileError("cannot open spec file '" + path + "'");
  return parse_spec(in);
}

void write_spec(std::ostream& out, const SweepFile& file) {
  const auto num = [](double v) { return dataset::format_number(v); };
  const auto& s = file.spec;
  const auto& p = s.fixed;
  if (!s.label.empty()) out << "[sweep]\nlabel = " << s.label << "\n\n";
  out << "[fixed]\n"
      << "process = " << to_string(p.qubit.process) << '\n'
      << "omega = " << num(p.qubit.omega) << '\n'
      << "lambda = " << num(p.qubit.lambda) << '\n'
      << "shape = " << to_string(p.smearing.shape) << '\n'
      << "sigma = " << num(p.smearing.sigma) << '\n'
      << "cutoff = " << to_string(p.cutoff.model) << '\n'
      << "eps = " << num(p.cutoff.epsilon) << '\n'
      << "r = " << num(p.switching.ramp) << '\n'
      << "T = " << num(p.switching.plateau) << '\n';
  for (const auto& a : s.axes) {
    out << "\n[axis." << sweep::to_string(a.axis) << "]\n"
        << "min = " << num(a.lower) << '\n'
        << "max = " << num(a.upper) << '\n'
        << "points = " << a.points << '\n'
        << "spacing = " << sweep::to_string(a.spacing) << '\n';
  }
  out << "\n[models]\ncompare = " << sweep::to_string(s.comparison) << "\nset = ";
  if (s.comparison == sweep::Comparison::Shapes) {
    for (std::size_t i = 0; i < s.shapes.size(); ++i) out << (i ? "," : "") << to_string(s.shapes[i]);
  } else {
    for (std::size_t i = 0; i < s.cutoffs.size(); ++i) out << (i ? "," : "") << to_string(s.cutoffs[i]);
  }
  out << "\n\n[output]\n";
  if (!file.output_path.empty()) out << "path = " << file.output_path << '\n';
  out << "continue_on_error = " << (s.continue_on_error ? "true" : "false") << '\n'
      << "threads = " << s.threads << '\n';
}

}  // namespace qline::cli
