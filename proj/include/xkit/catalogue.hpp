#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "xkit/groupoid.hpp"
#include "xkit/presentation.hpp"

namespace xkit {

// Span of groupoids W -> U, W -> V to be glued.
//
//   name: circle
//   W: objects: w, e
//   U: objects: w, e; edges: a: w->e
//   V: objects: w, e; edges: b: w->e
//   i: w -> w, e -> e
//   j: w -> w, e -> e
//
// A map lists every object of W and every edge of W, the edges going to paths.
struct PushoutSpec {
  std::string name;
  GroupoidPresentation w, u, v;
  GroupoidMorphism i, j;
};

bool looks_like_pushout(std::string_view text);
PushoutSpec parse_pushout(std::string_view text);
std::string to_text(const PushoutSpec& spec);
// Validates both legs, then glues.
GroupoidPresentation glue(const PushoutSpec& spec);

// "free of rank n", "finite of order n" or "no finite closure within bound n".
std::string describe_group(const GroupPresentation& p, std::size_t bound);

// Shell file: an "xmod: <file>" header naming the crossed module, then the six faces.
struct ShellFile {
  std::string xmod;
  std::string faces;
};
ShellFile split_shell_file(std::string_view text);

// Directory of the shipped example files.
std::string catalogue_dir();
std::string catalogue_path(const std::string& file);
// Throws parse when the file cannot be read.
std::string read_text_file(const std::string& path);
// Catalogue file names with the given extension, sorted.
std::vector<std::string> catalogue_files(const std::string& extension);

}  // namespace xkit
