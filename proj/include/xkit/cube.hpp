#pragma once

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace xkit {

// Cell of I^n as a word over {0, 1, *}; * marks a free coordinate.
struct CubeCell {
  std::string spec;

  int dimension() const;
  int ambient() const { return static_cast<int>(spec.size()); }
  bool operator==(const CubeCell&) const = default;
  auto operator<=>(const CubeCell&) const = default;
};

// Throws parse unless the text is a nonempty word over 0, 1, *.
CubeCell cube_cell(std::string_view spec);
// Codimension-one faces, each free coordinate set to 0 then 1.
std::vector<CubeCell> faces(const CubeCell& c);
bool is_face_of(const CubeCell& b, const CubeCell& a);  // codimension one
bool is_subcell(const CubeCell& b, const CubeCell& a);  // b inside the closure of a
// Faces of one cell that do not meet.
bool opposite(const CubeCell& x, const CubeCell& y);

struct CubeComplex {
  int n = 0;
  std::set<CubeCell> cells;

  bool contains(const CubeCell& c) const { return cells.count(c) != 0; }
  std::size_t size() const { return cells.size(); }
  bool is_closed() const;
  bool operator==(const CubeComplex&) const = default;
};

constexpr int kDefaultCubeCap = 6;

CubeComplex full_cube(int n, int cap = kDefaultCubeCap);
CubeComplex closure(int n, const std::vector<CubeCell>& generators);
// One cell per line; blank lines and '#' comments ignored.
CubeComplex parse_cube_complex(std::string_view text);
std::string to_text(const CubeComplex& c);

struct CollapseStep {
  CubeCell cell;
  CubeCell free_face;
  bool operator==(const CollapseStep&) const = default;
};

// Removes a and its free face b. not_face when b is not a face of a or a is missing,
// not_free when another cell of B has b as a face.
CubeComplex elementary_collapse(const CubeComplex& b, const CubeCell& a, const CubeCell& free_face);
CubeComplex replay(const CubeComplex& start, const std::vector<CollapseStep>& steps);

// Lines "a b" meaning collapse a through its free face b.
std::vector<CollapseStep> parse_certificate(std::string_view text);
std::string to_text(const std::vector<CollapseStep>& steps);

// I^n down to the vertex v, one coordinate at a time.
std::vector<CollapseStep> collapse_to_vertex(int n, const CubeCell& vertex, int cap = kDefaultCubeCap);

// B x I down to B x {0} u C x I; the new coordinate is appended last.
CubeComplex cylinder_complex(const CubeComplex& b);
CubeComplex product_collapse_target(const CubeComplex& b, const CubeComplex& c);
std::vector<CollapseStep> product_collapse(const CubeComplex& b, const CubeComplex& c);

// Subcomplex of the cell generated by the base and the sides, all codimension-one faces.
struct PartialBox {
  CubeCell cell;
  CubeCell base;
  std::vector<CubeCell> sides;

  std::set<CubeCell> generators() const;
  CubeComplex complex() const;
  bool is_box() const;
};

// not_face when a generator is not a face of the cell, not_partial_box when a side is
// opposite the base.
PartialBox make_partial_box(const CubeCell& cell, const CubeCell& base, const std::vector<CubeCell>& sides);
// Partial box on a set of faces, with the first face whose opposite is absent as base;
// not_partial_box when there is none.
PartialBox partial_box_on(const CubeCell& cell, const std::set<CubeCell>& generators);
bool is_partial_box(const CubeCell& cell, const CubeComplex& c);

// Collapse of the closure of a cell onto a partial box in it.
std::vector<CollapseStep> collapse_onto(const PartialBox& p);

struct BoxChain {
  std::vector<PartialBox> boxes;  // B' = boxes.front() ... boxes.back() = B
  std::vector<CubeCell> added;    // boxes[i + 1] = boxes[i] u added[i]
  std::vector<std::vector<CollapseStep>> collapses;  // boxes[i + 1] down to boxes[i]
};

BoxChain box_chain(const PartialBox& outer, const PartialBox& inner);

struct ChainCheck {
  bool ok = true;
  std::vector<std::string> problems;
};
// Re-checks every link: partial boxes, one new face per step, the trace being a partial box
// in the new face, and each collapse replaying to the smaller box.
ChainCheck verify_box_chain(const BoxChain& chain);

// Subdivision of type (m): parts indexed by r with 1 <= r_i <= m_i and domain
// r_i - 1 <= x_i <= r_i.
struct SubdivisionPart {
  std::vector<int> index;
  std::vector<std::array<int, 2>> domain;
};

struct Subdivision {
  std::vector<int> m;
  std::vector<SubdivisionPart> parts;

  int part_index(const std::vector<int>& r) const;  // -1 when out of range
};

Subdivision subdivide(const std::vector<int>& m);

// Face labels per part: labels[part][2 * i] is the face x_i = r_i - 1, labels[part][2 * i + 1]
// the face x_i = r_i.
using FaceLabels = std::vector<std::vector<std::string>>;

struct SharedFace {
  int lower = 0, upper = 0;  // part indices
  int direction = 0;
  int position = 0;  // x_direction of the shared face in [0, m]
};

std::vector<SharedFace> shared_faces(const Subdivision& s);
// Number of incidences checked; incidence_mismatch naming the first offending pair.
std::size_t compose_check(const Subdivision& s, const FaceLabels& labels);

std::string to_string(const SubdivisionPart& p);

}  // namespace xkit
