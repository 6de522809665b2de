#include <cstring>
#include <fstream>

#include "dclab/fields.hpp"
#include "json.hpp"

namespace dclab::fields {

namespace {

constexpr char kMagic[8] = {'D', 'C', 'L', 'B', 'I', 'N', '1', '\n'};

std::string stag_name(Stag s) {
  switch (s) {
    case Stag::cell: return "cell";
    case Stag::face: return "face";
    case Stag::edge: return "edge";
  }
  return "";
}

Stag stag_from(const std::string& s) {
  if (s == "cell") return Stag::cell;
  if (s == "face") return Stag::face;
  if (s == "edge") return Stag::edge;
  throw std::runtime_error("load_field: unknown staggering '" + s + "'");
}

void write_blob(const std::string& path, const nlohmann::json& header,
                const std::vector<const Array3*>& arrays) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_field: cannot open " + path);
  os.write(kMagic, sizeof(kMagic));
  std::string h = header.dump();
  std::uint64_t hlen = h.size();
  os.write(reinterpret_cast<const char*>(&hlen), sizeof(hlen));
  os.write(h.data(), static_cast<std::streamsize>(h.size()));
  for (const Array3* a : arrays)
    os.write(reinterpret_cast<const char*>(a->data().data()),
             static_cast<std::streamsize>(a->size() * sizeof(double)));
  if (!os) throw std::runtime_error("save_field: write failed for " + path);
}

nlohmann::json grid_json(const Grid& g) {
  return {{"n", {g.n[0], g.n[1], g.n[2]}}, {"L", {g.L[0], g.L[1], g.L[2]}}};
}

Grid grid_from(const nlohmann::json& j) {
  Grid g;
  for (int a = 0; a < 3; ++a) {
    g.n[a] = j.at("n").at(a).get<int>();
    g.L[a] = j.at("L").at(a).get<Real>();
  }
  return g;
}

}  // namespace

void save_field(const std::string& path, const ScalarField& f) {
  nlohmann::json h = {{"kind", "scalar"}, {"grid", grid_json(f.grid)}};
  write_blob(path, h, {&f.a});
}

void save_field(const std::string& path, const StaggeredField& f) {
  nlohmann::json h = {{"kind", "staggered"},
                      {"stag", stag_name(f.stag)},
                      {"grid", grid_json(f.grid)}};
  write_blob(path, h, {&f.c[0], &f.c[1], &f.c[2]});
}

FieldFile load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_field: cannot open " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(magic)) != 0)
    throw std::runtime_error("load_field: bad magic in " + path);
  std::uint64_t hlen = 0;
  is.read(reinterpret_cast<char*>(&hlen), sizeof(hlen));
  if (!is || hlen > (1u << 20)) throw std::runtime_error("load_field: bad header length");
  std::string htext(hlen, '\0');
  is.read(htext.data(), static_cast<std::streamsize>(hlen));
  nlohmann::json h = nlohmann::json::parse(htext);

  FieldFile out;
  out.grid = grid_from(h.at("grid"));
  auto read_into = [&](Array3& a) {
    is.read(reinterpret_cast<char*>(a.data().data()),
            static_cast<std::streamsize>(a.size() * sizeof(double)));
    if (!is) throw std::runtime_error("load_field: truncated data in " + path);
  };
  if (h.at("kind") == "scalar") {
    out.scalar = true;
    out.s = ScalarField(out.grid);
    read_into(out.s.a);
  } else {
    out.scalar = false;
    out.stag = stag_from(h.at("stag").get<std::string>());
    out.v = StaggeredField(out.grid, out.stag);
    for (int c = 0; c < 3; ++c) read_into(out.v.c[c]);
  }
  return out;
}

}  // namespace dclab::fields
