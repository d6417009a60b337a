#include "scaledyn/snapshot.hpp"

#include <fstream>
#include <sstream>

#include "scaledyn/textio.hpp"

namespace scaledyn {

void write_snapshot(const std::string& path, const Configuration& c, uint64_t seed,
                    uint64_t step) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << c.torus.dim << " " << format_double(c.torus.box) << " " << c.size() << " " << seed
      << " " << step << "\n";
  for (const Vec& x : c.pos) {
    for (int a = 0; a < c.torus.dim; ++a) out << (a ? " " : "") << format_double(x[a]);
    out << "\n";
  }
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Snapshot s;
  int d = 0;
  size_t n = 0;
  std::string box_str;
  in >> d >> box_str >> n >> s.seed >> s.step;
  if (!in) throw Error("malformed snapshot header in " + path);
  s.config = Configuration(Torus(parse_double(box_str), d));
  s.config.pos.resize(n);
  std::string tok;
  for (size_t i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a) {
      if (!(in >> tok)) throw Error("truncated snapshot " + path);
      s.config.pos[i][a] = parse_double(tok);
    }
  return s;
}

}  // namespace scaledyn
