#pragma once

// JSON encodings of the library's inputs and results.

#include "cpat/complex.hpp"
#include "cpat/conditions.hpp"
#include "cpat/polyhedron.hpp"
#include "cpat/solver.hpp"
#include "cpat/verify.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace cpat::io {

using json = nlohmann::ordered_json;

/// Reads and parses a file; throws InvalidInput on I/O or syntax errors.
json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);
/// Two-space indented, trailing newline.
std::string dump(const json& j);

// {"vertices": n, "faces": [[a,b,c], ...]}
Triangulation triangulation_from_json(const json& j);
json to_json(const Triangulation& t);

// {"theta": [{"edge": [i,j], "value": v}, ...]} or {"constant": v}.
// Edge keys are canonicalised; every edge must be given exactly once.
AngleAssignment theta_from_json(const json& j, const Triangulation& t);
json to_json(const Triangulation& t, const AngleAssignment& theta);

// {"vertices": n, "faces": [[...], ...]} with polygonal faces.
CellComplex complex_from_json(const json& j);
json to_json(const CellComplex& p);

/// Polyhedron edge angles in the theta format, indexed like the sorted edge
/// list of the complex.
std::vector<double> polyhedron_theta_from_json(const json& j, const std::vector<Edge>& edges);
/// Sorted edge list of a cell complex.
std::vector<Edge> complex_edges(const CellComplex& p);

json to_json(const ConditionReport& r);
json to_json(const CurvatureReport& r);
json to_json(const VerificationReport& r);
json to_json(const HyperbolicPolyhedron& q);
json to_json(const PolyhedronCheck& c);
json to_json(const std::vector<DegenerationFunctional>& table);

/// Pattern document; embeds the triangulation and the angles so that later
/// stages need a single file.
json to_json(const CirclePattern& p);
CirclePattern pattern_from_json(const json& j);

json pattern_json(const Triangulation& t, const AngleAssignment& theta,
                  const EuclideanSolution& s);
json pattern_json(const Triangulation& t, const AngleAssignment& theta,
                  const SphericalSolution& s);
json pattern_json(const Triangulation& t, const AngleAssignment& theta,
                  const SphericalConfiguration& cfg);

SphericalConfiguration spherical_config(const CirclePattern& p);
EuclideanConfiguration euclidean_config(const CirclePattern& p);

}  // namespace cpat::io
