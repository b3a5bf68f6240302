#include "poro/hex.hpp"
#include "poro/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace poro {

namespace {

std::array<int, 4> sorted4(std::array<int, 4> f) {
  std::sort(f.begin(), f.end());
  return f;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_;
      while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }

  std::string expect() {
    std::string line;
    if (!next(line)) throw MeshParseError("unexpected end of file", line_);
    return line;
  }

  int line() const { return line_; }

 private:
  std::istream& in_;
  int line_ = 0;
};

}  // namespace

void write_gmsh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot open mesh file for writing: " + path);

  out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n";

  out << "$PhysicalNames\n" << (1 + mesh.tag_names().size()) << "\n";
  out << "3 1 \"" << to_string(mesh.domain_tag) << "\"\n";
  for (std::size_t t = 0; t < mesh.tag_names().size(); ++t)
    out << "2 " << (101 + t) << " \"" << mesh.tag_names()[t] << "\"\n";
  out << "$EndPhysicalNames\n";

  out << "$Nodes\n" << mesh.nodes.size() << "\n";
  for (std::size_t v = 0; v < mesh.nodes.size(); ++v)
    out << (v + 1) << ' ' << format_full(mesh.nodes[v][0]) << ' '
        << format_full(mesh.nodes[v][1]) << ' ' << format_full(mesh.nodes[v][2]) << "\n";
  out << "$EndNodes\n";

  out << "$Elements\n" << (mesh.boundary_faces.size() + mesh.cells.size()) << "\n";
  int eid = 1;
  for (const auto& bf : mesh.boundary_faces) {
    const auto fn = mesh.face_nodes(bf);
    out << eid++ << " 3 2 " << (101 + bf.tag) << " 1";
    for (int v : fn) out << ' ' << (v + 1);
    out << "\n";
  }
  for (const auto& cell : mesh.cells) {
    out << eid++ << " 5 2 1 1";
    for (int v : cell) out << ' ' << (v + 1);
    out << "\n";
  }
  out << "$EndElements\n";
  if (!out) throw ArgumentError("write failure on mesh file: " + path);
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open mesh file: " + path);
  LineReader reader(in);

  Mesh mesh;
  std::map<int, std::string> phys2d;  // physical id -> boundary tag name
  std::map<int, std::string> phys3d;
  std::map<long, int> node_id;  // file node id -> mesh node index
  struct RawQuad {
    std::array<int, 4> nodes;
    int phys;
    int line;
  };
  std::vector<RawQuad> quads;
  bool have_nodes = false, have_elements = false;

  std::string line;
  while (reader.next(line)) {
    if (line == "$MeshFormat") {
      std::istringstream ss(reader.expect());
      double version = 0.0;
      int file_type = -1, data_size = 0;
      if (!(ss >> version >> file_type >> data_size) || version != 2.2 || file_type != 0)
        throw MeshParseError("unsupported mesh format (need 2.2 ASCII)", reader.line());
      if (reader.expect() != "$EndMeshFormat")
        throw MeshParseError("missing $EndMeshFormat", reader.line());
    } else if (line == "$PhysicalNames") {
      const int count = std::stoi(reader.expect());
      for (int i = 0; i < count; ++i) {
        std::istringstream ss(reader.expect());
        int dim = 0, id = 0;
        std::string name;
        if (!(ss >> dim >> id)) throw MeshParseError("malformed physical name", reader.line());
        std::getline(ss, name);
        const auto a = name.find('"'), b = name.rfind('"');
        if (a == std::string::npos || b <= a)
          throw MeshParseError("physical name must be quoted", reader.line());
        name = name.substr(a + 1, b - a - 1);
        if (dim == 2) phys2d[id] = name;
        if (dim == 3) phys3d[id] = name;
      }
      if (reader.expect() != "$EndPhysicalNames")
        throw MeshParseError("missing $EndPhysicalNames", reader.line());
    } else if (line == "$Nodes") {
      const long count = std::stol(reader.expect());
      for (long i = 0; i < count; ++i) {
        std::istringstream ss(reader.expect());
        long id = 0;
        double x = 0, y = 0, z = 0;
        if (!(ss >> id >> x >> y >> z))
          throw MeshParseError("malformed node line", reader.line());
        if (!node_id.emplace(id, static_cast<int>(mesh.nodes.size())).second)
          throw MeshParseError("duplicate node id " + std::to_string(id), reader.line());
        mesh.nodes.emplace_back(x, y, z);
      }
      if (reader.expect() != "$EndNodes")
        throw MeshParseError("missing $EndNodes", reader.line());
      have_nodes = true;
    } else if (line == "$Elements") {
      const long count = std::stol(reader.expect());
      for (long i = 0; i < count; ++i) {
        std::istringstream ss(reader.expect());
        long id = 0;
        int type = 0, ntags = 0;
        if (!(ss >> id >> type >> ntags))
          throw MeshParseError("malformed element line", reader.line());
        std::vector<int> tags(ntags);
        for (int& t : tags)
          if (!(ss >> t)) throw MeshParseError("malformed element tags", reader.line());
        const int phys = ntags > 0 ? tags[0] : 0;
        auto read_nodes = [&](int n) {
          std::vector<int> vs(n);
          for (int& v : vs) {
            long file_id = 0;
            if (!(ss >> file_id))
              throw MeshParseError("element references too few nodes", reader.line());
            auto it = node_id.find(file_id);
            if (it == node_id.end())
              throw MeshParseError("element references unknown node " +
                                       std::to_string(file_id),
                                   reader.line());
            v = it->second;
          }
          return vs;
        };
        if (type == 5) {
          const auto vs = read_nodes(8);
          std::array<int, 8> cell;
          std::copy_n(vs.begin(), 8, cell.begin());
          mesh.cells.push_back(cell);
        } else if (type == 3) {
          const auto vs = read_nodes(4);
          quads.push_back({{vs[0], vs[1], vs[2], vs[3]}, phys, reader.line()});
        } else {
          throw MeshParseError("unsupported element type " + std::to_string(type) +
                                   " (only 8-node hexahedra and 4-node boundary quads)",
                               reader.line());
        }
      }
      if (reader.expect() != "$EndElements")
        throw MeshParseError("missing $EndElements", reader.line());
      have_elements = true;
    } else if (!line.empty() && line[0] == '$') {
      // Skip unknown sections up to their matching end marker.
      const std::string end = "$End" + line.substr(1);
      std::string skip;
      while (reader.next(skip))
        if (skip == end) break;
    } else {
      throw MeshParseError("unexpected content: " + line, reader.line());
    }
  }
  if (!have_nodes || !have_elements)
    throw MeshParseError("mesh file lacks $Nodes or $Elements", reader.line());

  if (!phys3d.empty()) {
    try {
      mesh.domain_tag = domain_tag_from_string(phys3d.begin()->second);
    } catch (const ArgumentError&) {
      mesh.domain_tag = DomainTag::macro;
    }
  }

  // Attach boundary quads to (cell, local face) of the complex boundary.
  std::map<std::array<int, 4>, std::pair<int, int>> boundary;
  std::map<std::array<int, 4>, int> multiplicity;
  for (std::size_t c = 0; c < mesh.cells.size(); ++c)
    for (int lf = 0; lf < 6; ++lf) {
      const auto& lfn = kHexFaces[lf];
      std::array<int, 4> fn = {mesh.cells[c][lfn[0]], mesh.cells[c][lfn[1]],
                               mesh.cells[c][lfn[2]], mesh.cells[c][lfn[3]]};
      const auto key = sorted4(fn);
      multiplicity[key]++;
      boundary[key] = {static_cast<int>(c), lf};
    }
  for (const auto& q : quads) {
    const auto key = sorted4(q.nodes);
    auto mit = multiplicity.find(key);
    if (mit == multiplicity.end() || mit->second != 1)
      throw MeshParseError("boundary quad does not match a boundary face of the complex",
                           q.line);
    std::string name;
    auto pit = phys2d.find(q.phys);
    name = pit != phys2d.end() ? pit->second : ("phys" + std::to_string(q.phys));
    const auto [cell, lf] = boundary[key];
    mesh.boundary_faces.push_back({cell, lf, mesh.add_tag(name)});
  }

  try {
    mesh.validate();
  } catch (const GeometryError& e) {
    throw MeshParseError(std::string("invalid mesh: ") + e.what(), reader.line());
  }
  return mesh;
}

}  // namespace poro
