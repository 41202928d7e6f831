#include "hk/ahss.hpp"

#include <algorithm>
#include <sstream>

namespace hk {

GradedCoeffSystem::GradedCoeffSystem(CategoryPtr category, int q_min,
                                     std::vector<CoeffSystem> systems)
    : category_(std::move(category)), q_min_(q_min), systems_(std::move(systems)) {
  for (const auto& s : systems_) {
    if (s.category() != category_ && !(*s.category() == *category_)) {
      throw Error(ErrorCode::Category, "graded coefficient systems must share one category");
    }
  }
}

CoeffSystem GradedCoeffSystem::at(int q) const {
  if (systems_.empty() || q < q_min_ || q > q_max()) return CoeffSystem::zero(category_);
  return systems_[static_cast<std::size_t>(q - q_min_)];
}

bool GradedCoeffSystem::is_connective() const {
  for (int q = q_min_; q <= q_max() && q < 0; ++q) {
    if (!at(q).is_zero()) return false;
  }
  return true;
}

FgAbGroup SpectralPage::at(int p, int q) const {
  auto it = entries.find({p, q});
  return it == entries.end() ? FgAbGroup::trivial() : it->second;
}

SpectralPage e1_page(const CellOrbitComplex& x, const GradedCoeffSystem& g) {
  SpectralPage page;
  page.r = 1;
  page.p_max = x.dimension();
  page.q_min = g.q_min();
  page.q_max = g.empty() ? g.q_min() - 1 : g.q_max();
  for (int q = page.q_min; q <= page.q_max; ++q) {
    const ChainComplex row = apply_coefficients(x, g.at(q));
    for (int p = 0; p <= page.p_max; ++p) {
      page.entries.emplace(std::make_pair(p, q), row.group(p));
      if (p >= 1) page.d1.emplace(std::make_pair(p, q), row.differential(p));
    }
  }
  return page;
}

SpectralPage e2_page(const CellOrbitComplex& x, const GradedCoeffSystem& g) {
  SpectralPage page;
  page.r = 2;
  page.p_max = x.dimension();
  page.q_min = g.q_min();
  page.q_max = g.empty() ? g.q_min() - 1 : g.q_max();
  for (int q = page.q_min; q <= page.q_max; ++q) {
    const ChainComplex row = apply_coefficients(x, g.at(q));
    for (int p = 0; p <= page.p_max; ++p) page.entries.emplace(std::make_pair(p, q), row.homology(p));
  }
  return page;
}

std::string render_page(const SpectralPage& page) {
  std::vector<std::vector<std::string>> grid;
  std::size_t width = 3;
  for (int q = page.q_max; q >= page.q_min; --q) {
    std::vector<std::string> row;
    for (int p = 0; p <= page.p_max; ++p) {
      row.push_back(page.at(p, q).to_string());
      width = std::max(width, row.back().size());
    }
    grid.push_back(std::move(row));
  }
  std::ostringstream os;
  os << "E^" << page.r << " page (rows q, columns p)\n";
  int q = page.q_max;
  for (const auto& row : grid) {
    std::ostringstream label;
    label << "q=" << q--;
    os << label.str();
    for (std::size_t pad = label.str().size(); pad < 6; ++pad) os << ' ';
    os << '|';
    std::string line;
    for (const auto& cell : row) {
      line += ' ' + cell;
      line.append(width - cell.size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  os << "      +";
  for (int p = 0; p <= page.p_max; ++p) os << std::string(width + 1, '-');
  std::string footer = "\n        ";
  for (int p = 0; p <= page.p_max; ++p) {
    const std::string lbl = "p=" + std::to_string(p);
    footer += lbl;
    footer.append(width + 1 - lbl.size(), ' ');
  }
  while (footer.back() == ' ') footer.pop_back();
  os << footer << '\n';
  return os.str();
}

bool edge_h0_check(const CellOrbitComplex& x, const CoeffSystem& f0) {
  try {
    const FgAbGroup h0 = bredon_homology(x, f0, 0);
    const FgAbGroup colim = colimit(restrict(f0, x.stabilizer_objects()));
    return is_isomorphic(h0, colim);
  } catch (const Error&) {
    return false;
  }
}

std::vector<AssembledDegree> assemble_k_groups(const SpectralPage& page) {
  if (page.r != 2) {
    throw Error(ErrorCode::Unsupported, "assembly needs the E^2 page");
  }
  if (page.p_max >= 2) {
    throw Error(ErrorCode::Unsupported,
                "assembly is only available for complexes of dimension <= 1");
  }
  std::vector<AssembledDegree> out;
  for (int n = page.q_min; n <= page.q_max + 1; ++n) {
    out.push_back(AssembledDegree{n, page.at(0, n), page.at(1, n - 1)});
  }
  return out;
}

}  // namespace hk
