#include "xkit/catalogue.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <tuple>

#include "xkit/enumerate.hpp"
#include "xkit/error.hpp"
#include "xkit/parse.hpp"

namespace xkit {

namespace {

// "key: rest" lines; the rest keeps its own colons and semicolons.
std::vector<std::pair<std::string, std::string>> keyed_lines(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) fail(Errc::parse, "expected 'key: value' in '" + line + "'");
    out.emplace_back(trim(line.substr(0, colon)), trim(line.substr(colon + 1)));
  }
  return out;
}

GroupoidMorphism parse_map(const std::string& text, const GroupoidPresentation& src, const GroupoidPresentation& dst) {
  GroupoidMorphism f;
  f.object_map.assign(src.graph.objects.size(), -1);
  f.edge_map.resize(src.graph.edges.size());
  std::vector<char> edge_seen(src.graph.edges.size(), 0);
  for (const auto& item : split_top(text, ',')) {
    const auto arrow = item.find("->");
    if (arrow == std::string::npos) fail(Errc::parse, "expected 'x -> y' in '" + item + "'");
    const std::string from = trim(item.substr(0, arrow)), to = trim(item.substr(arrow + 2));
    if (int o = src.graph.object_index(from); o >= 0) {
      f.object_map[o] = dst.graph.object_index(to);
      if (f.object_map[o] < 0) fail(Errc::object_not_found, "no object '" + to + "' in the target");
    } else if (int e = src.graph.edge_index(from); e >= 0) {
      const int hint = f.object_map[src.graph.edges[e].source];
      f.edge_map[e] = parse_path(parse_word(to), dst.graph, hint);
      edge_seen[e] = 1;
    } else {
      fail(Errc::parse, "'" + from + "' is neither an object nor an edge of the source");
    }
  }
  for (std::size_t o = 0; o < f.object_map.size(); ++o)
    if (f.object_map[o] < 0) fail(Errc::parse, "object '" + src.graph.objects[o] + "' is not mapped");
  for (std::size_t e = 0; e < edge_seen.size(); ++e)
    if (!edge_seen[e]) fail(Errc::parse, "edge '" + src.graph.edges[e].name + "' is not mapped");
  return f;
}

std::string map_text(const GroupoidMorphism& f, const GroupoidPresentation& src, const GroupoidPresentation& dst) {
  std::string out;
  for (std::size_t o = 0; o < f.object_map.size(); ++o)
    out += (out.empty() ? "" : ", ") + src.graph.objects[o] + " -> " + dst.graph.objects[f.object_map[o]];
  for (std::size_t e = 0; e < f.edge_map.size(); ++e)
    out += (out.empty() ? "" : ", ") + src.graph.edges[e].name + " -> " + to_string(f.edge_map[e], dst.graph);
  return out;
}

}  // namespace

bool looks_like_pushout(std::string_view text) {
  for (const auto& [key, value] : keyed_lines(text))
    if (key == "W") return true;
  return false;
}

PushoutSpec parse_pushout(std::string_view text) {
  PushoutSpec spec;
  std::string i_text, j_text;
  bool seen[3] = {false, false, false};
  for (const auto& [key, value] : keyed_lines(text)) {
    if (key == "name") spec.name = value;
    else if (key == "W") spec.w = parse_groupoid(value), seen[0] = true;
    else if (key == "U") spec.u = parse_groupoid(value), seen[1] = true;
    else if (key == "V") spec.v = parse_groupoid(value), seen[2] = true;
    else if (key == "i") i_text = value;
    else if (key == "j") j_text = value;
    else fail(Errc::parse, "unknown pushout field '" + key + "'");
  }
  if (!seen[0] || !seen[1] || !seen[2]) fail(Errc::parse, "a pushout needs W, U and V");
  spec.i = parse_map(i_text, spec.w, spec.u);
  spec.j = parse_map(j_text, spec.w, spec.v);
  return spec;
}

std::string to_text(const PushoutSpec& spec) {
  std::string out;
  if (!spec.name.empty()) out += "name: " + spec.name + "\n";
  out += "W: " + to_text(spec.w) + "\n";
  out += "U: " + to_text(spec.u) + "\n";
  out += "V: " + to_text(spec.v) + "\n";
  out += "i: " + map_text(spec.i, spec.w, spec.u) + "\n";
  out += "j: " + map_text(spec.j, spec.w, spec.v) + "\n";
  return out;
}

GroupoidPresentation glue(const PushoutSpec& spec) {
  for (const auto* p : {&spec.w, &spec.u, &spec.v}) validate(*p);
  for (const auto& [f, target, leg] : {std::tuple{&spec.i, &spec.u, "i"}, std::tuple{&spec.j, &spec.v, "j"}}) {
    const auto report = check_morphism(spec.w, *target, *f);
    if (!report.endpoints_ok || !report.relations_ok)
      fail(Errc::precondition_failed, std::string("leg ") + leg + " is not a morphism: " +
                                          (report.problems.empty() ? "" : report.problems.front()));
  }
  return pushout(spec.w, spec.u, spec.v, spec.i, spec.j);
}

std::string describe_group(const GroupPresentation& p, std::size_t bound) {
  const bool free = std::all_of(p.relators.begin(), p.relators.end(), [](const FreeWord& r) { return r.is_identity(); });
  if (free) return "free of rank " + std::to_string(p.generators.size());
  try {
    return "finite of order " + std::to_string(enumerate_fp_group(p, bound).order());
  } catch (const Error& e) {
    if (e.code() != Errc::unbounded) throw;
    return "no finite closure within bound " + std::to_string(bound);
  }
}

ShellFile split_shell_file(std::string_view text) {
  ShellFile out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.rfind("xmod:", 0) == 0) out.xmod = trim(t.substr(5));
    else if (!t.empty()) out.faces += t + "\n";
  }
  return out;
}

std::string catalogue_dir() {
  if (const char* env = std::getenv("XKIT_CATALOGUE")) return env;
  return XKIT_CATALOGUE_DIR;
}

std::string catalogue_path(const std::string& file) { return (std::filesystem::path(catalogue_dir()) / file).string(); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::parse, "cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<std::string> catalogue_files(const std::string& extension) {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(catalogue_dir(), ec))
    if (entry.is_regular_file() && entry.path().extension() == extension) out.push_back(entry.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace xkit
