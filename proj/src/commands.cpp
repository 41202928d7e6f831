#include "hk/commands.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hk/ahss.hpp"
#include "hk/document.hpp"
#include "hk/error.hpp"
#include "hk/mvcube.hpp"
#include "hk/recipe.hpp"

namespace hk {

namespace {

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io: return exit_code::kIo;
    case ErrorCode::WrongKind: return exit_code::kWrongKind;
    case ErrorCode::CrossCheck: return exit_code::kCrossCheck;
    default: return exit_code::kValidation;
  }
}

// A document with every module-level validation already run.
struct Loaded {
  InstanceDocument doc;
  CategoryPtr category;
  CoeffSystem f0;
};

void require(const Report& r, ErrorCode code, const std::string& context) {
  if (!r) throw Error(code, context + ": " + r.message);
}

void require_functor(const CoeffSystem& f, const std::string& context) {
  Report r = validate_functor(f);
  if (r) return;
  const bool sub = r.message.find("Condition (Sub)") != std::string::npos;
  throw Error(sub ? ErrorCode::ConditionSub : ErrorCode::Functoriality,
              context.empty() ? r.message : context + ": " + r.message);
}

Loaded load(const std::string& path) {
  Loaded l;
  l.doc = load_document(path);
  l.category = build_category(l.doc);
  require(validate_category(*l.category), ErrorCode::Category, "category");
  l.f0 = degree0_coefficients(l.doc, l.category);
  require_functor(l.f0, "");
  for (const auto& g : l.doc.graded) {
    require_functor(build_coefficients(l.doc, l.category, g.block),
                    "coefficients at q = " + std::to_string(g.q));
  }
  std::visit(
      [&l](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CellComplexSpec>) {
          require(check_boundary(build_cell_complex(s, l.category)), ErrorCode::NonZeroComposite,
                  "cell complex");
        } else if constexpr (std::is_same_v<T, PosetSpec>) {
          const PosetChainModel model = build_poset_model(s, l.f0);
          require(validate_poset_model(model), ErrorCode::Category, "poset");
          poset_cell_complex(model);
        } else if constexpr (std::is_same_v<T, RecipeSpec>) {
          require(validate_recipe(build_recipe(s, l.f0)), ErrorCode::Category, "recipe");
        } else if constexpr (std::is_same_v<T, CentralExtSpec>) {
          require(validate_recipe(build_central_ext(s, l.f0).base()), ErrorCode::Category,
                  "central extension");
        } else if constexpr (std::is_same_v<T, ExactSequenceSpec>) {
          build_exact_sequence(s);
        } else {
          build_sl2_square(s, l.f0);
        }
      },
      l.doc.structure);
  return l;
}

[[noreturn]] void wrong_kind(const Loaded& l, const std::string& command, const std::string& wanted) {
  throw Error(ErrorCode::WrongKind, command + " needs a " + wanted + " structure, file has '" +
                                        kind_name(l.doc.structure) + "'");
}

void echo_assertions(const Loaded& l, std::ostream& os) {
  for (const auto& [k, v] : l.doc.assertions) {
    os << "assumed " << k << " = " << (v ? "true" : "false") << " (not checked)\n";
  }
}

CellOrbitComplex complex_for(const Loaded& l, const std::string& command) {
  if (const auto* s = std::get_if<CellComplexSpec>(&l.doc.structure)) {
    return build_cell_complex(*s, l.category);
  }
  if (const auto* s = std::get_if<PosetSpec>(&l.doc.structure)) {
    return poset_cell_complex(build_poset_model(*s, l.f0));
  }
  wrong_kind(l, command, "cell_complex or poset");
}

void cmd_validate(const std::string& path, bool quiet, std::ostream& os) {
  const Loaded l = load(path);
  os << "ok: " << kind_name(l.doc.structure) << " instance, " << l.doc.objects.size()
     << " objects, " << l.doc.morphisms.size() << " non-identity morphisms\n";
  if (!quiet) echo_assertions(l, os);
}

void cmd_homology(const std::string& path, std::optional<int> degree, bool quiet,
                  std::ostream& os) {
  const Loaded l = load(path);
  if (!quiet) echo_assertions(l, os);
  const CellOrbitComplex x = complex_for(l, "homology");
  if (degree) {
    os << "H_" << *degree << " = " << bredon_homology(x, l.f0, *degree) << "\n";
    return;
  }
  const ChainComplex c = apply_coefficients(x, l.f0);
  for (int n = 0; n <= std::max(0, x.dimension()); ++n) {
    os << "H_" << n << " = " << c.homology(n) << "\n";
  }
}

void cmd_e2(const std::string& path, bool quiet, std::ostream& os) {
  const Loaded l = load(path);
  if (!quiet) echo_assertions(l, os);
  const CellOrbitComplex x = complex_for(l, "e2");
  const GradedCoeffSystem g = graded_coefficients(l.doc, l.category);
  for (const auto& f : g.systems()) apply_coefficients(x, f);
  const SpectralPage page = e2_page(x, g);
  os << render_page(page);
  if (x.dimension() <= 1) {
    for (const auto& a : assemble_k_groups(page)) {
      os << "K_" << a.n << ": 0 -> " << a.filtration0 << " -> K_" << a.n << " -> "
         << a.filtration1 << " -> 0\n";
    }
  }
}

void print_pair(std::ostream& os, const std::string& a_name, const FgAbGroup& a,
                const std::string& b_name, const FgAbGroup& b) {
  os << "K_0 via " << a_name << " = " << a << "\n";
  os << "K_0 via " << b_name << " = " << b << "\n";
  if (!is_isomorphic(a, b)) {
    throw Error(ErrorCode::CrossCheck, "pipelines disagree: " + a.to_string() + " vs " + b.to_string());
  }
  os << "K_0 = " << a << "\n";
}

void cmd_k0(const std::string& path, bool variation, bool quiet, std::ostream& os) {
  const Loaded l = load(path);
  if (!quiet) echo_assertions(l, os);
  if (variation) {
    const auto* s = std::get_if<CentralExtSpec>(&l.doc.structure);
    if (!s) wrong_kind(l, "k0 --variation", "central_ext");
    const CentralK0 k = k0_central(build_central_ext(*s, l.f0));
    print_pair(os, "gamma", k.via_gamma, "delta+epsilon", k.via_delta_epsilon);
    return;
  }
  RecipeInstance inst;
  if (const auto* s = std::get_if<RecipeSpec>(&l.doc.structure)) {
    inst = build_recipe(*s, l.f0);
  } else if (const auto* s = std::get_if<CentralExtSpec>(&l.doc.structure)) {
    inst = build_central_ext(*s, l.f0).base();
  } else if (const auto* s = std::get_if<PosetSpec>(&l.doc.structure)) {
    const PosetChainModel model = build_poset_model(*s, l.f0);
    const FgAbGroup recipe = k0_general(strict_domain_instance(strict_domain(model)));
    print_pair(os, "recipe", recipe, "Bredon", poset_chain_complex(model).homology(0));
    return;
  } else {
    wrong_kind(l, "k0", "recipe, central_ext or poset");
  }
  print_pair(os, "recipe", k0_general(inst), "Bredon", k0_via_bredon(inst));
}

void cmd_colimit(const std::string& path, bool quiet, std::ostream& os) {
  const Loaded l = load(path);
  if (!quiet) echo_assertions(l, os);
  os << "colim = " << colimit(l.f0) << "\n";
}

void report_exactness(const ExactSequenceInstance& seq, std::ostream& os) {
  const ExactnessReport r = check_exactness(seq);
  for (const auto& e : r.entries) {
    os << "position " << e.position << ": homology = " << e.homology << ", "
       << (e.exact ? "exact" : "not exact") << "\n";
  }
  os << "sequence exact: " << (r.all_exact() ? "yes" : "no") << "\n";
}

void cmd_mv(const std::string& path, bool quiet, std::ostream& os) {
  const Loaded l = load(path);
  if (!quiet) echo_assertions(l, os);
  if (const auto* s = std::get_if<ExactSequenceSpec>(&l.doc.structure)) {
    report_exactness(build_exact_sequence(*s), os);
  } else if (const auto* s = std::get_if<Sl2SquareSpec>(&l.doc.structure)) {
    const Sl2Square sq = build_sl2_square(*s, l.f0);
    os << "K_0 = " << solve_degree0(sq) << "\n";
    report_exactness(degree0_tail(sq), os);
  } else {
    wrong_kind(l, "mv", "exact_sequence or sl2_square");
  }
}

std::string cmd_instance(const std::string& family, std::size_t n, std::size_t rank) {
  const FgAbGroup a = FgAbGroup::free(rank);
  const IntMatrix id = IntMatrix::identity(rank);
  if (family == "sl") {
    SlCoefficientData d;
    d.n = n;
    d.vertex_groups.assign(n, a);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        d.edge_groups.emplace(std::pair{i, j}, a);
        d.to_lower.emplace(std::pair{i, j}, id);
        d.to_upper.emplace(std::pair{i, j}, id);
      }
    }
    return serialize_document(document_from_recipe(sl_instance(d)));
  }
  const std::size_t k = n / 2;
  if (family == "pgl") {
    PglCoefficientData d{n, a, a, a, std::vector<FgAbGroup>(k, a), id, id,
                         std::vector<IntMatrix>(k, id), std::vector<IntMatrix>(k, id)};
    return serialize_document(document_from_recipe(pgl_instance(d)));
  }
  GlCoefficientData d{n, a, a, std::vector<FgAbGroup>(k, a), id, std::vector<IntMatrix>(k, id),
                      std::vector<IntMatrix>(k, id)};
  return serialize_document(document_from_central(gl_instance(d).instance));
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"hk0: degree-0 K-theory of Hecke algebras via Bredon homology"};
  app.require_subcommand(1);
  std::string output;
  bool quiet = false;
  app.add_option("--output,-o", output, "Write results to this file instead of stdout");
  app.add_flag("--quiet,-q", quiet, "Only print results");
  app.fallthrough();

  std::string path;
  auto add_file = [&path](CLI::App* sub) {
    sub->add_option("file", path, "Instance file")->required();
    return sub;
  };
  CLI::App* validate = add_file(app.add_subcommand("validate", "Parse and validate an instance"));
  CLI::App* homology = add_file(app.add_subcommand("homology", "Bredon homology of the q = 0 system"));
  std::optional<int> degree;
  bool all = false;
  auto* deg_opt = homology->add_option("--degree,-n", degree, "Single degree");
  homology->add_flag("--all", all, "All degrees up to the dimension")->excludes(deg_opt);
  CLI::App* e2 = add_file(app.add_subcommand("e2", "E2 page of the spectral sequence"));
  CLI::App* k0 = add_file(app.add_subcommand("k0", "Degree-0 group by both pipelines"));
  bool variation = false;
  k0->add_flag("--variation", variation, "Use the central-extension variation");
  CLI::App* colim = add_file(app.add_subcommand("colimit", "Colimit of the q = 0 system"));
  CLI::App* mv = add_file(app.add_subcommand("mv", "Exactness report for a sequence or square"));
  CLI::App* instance = app.add_subcommand("instance", "Emit a skeleton instance file");
  std::string family;
  std::size_t n = 2, rank = 1;
  instance->add_option("family", family, "sl, pgl or gl")
      ->required()
      ->check(CLI::IsMember({"sl", "pgl", "gl"}));
  instance->add_option("--n", n, "Matrix size")->required();
  instance->add_option("--rank", rank, "Rank of the placeholder groups Z^rank");

  CommandResult result;
  std::ostringstream out, err;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    result.exit_code = app.exit(e, out, err);
    if (result.exit_code != 0) result.exit_code = exit_code::kValidation;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  try {
    if (validate->parsed()) cmd_validate(path, quiet, out);
    if (homology->parsed()) cmd_homology(path, degree, quiet, out);
    if (e2->parsed()) cmd_e2(path, quiet, out);
    if (k0->parsed()) cmd_k0(path, variation, quiet, out);
    if (colim->parsed()) cmd_colimit(path, quiet, out);
    if (mv->parsed()) cmd_mv(path, quiet, out);
    if (instance->parsed()) out << cmd_instance(family, n, rank);
    if (!output.empty()) {
      std::ofstream f(output, std::ios::binary);
      f << out.str();
      if (!f) throw Error(ErrorCode::Io, "cannot write '" + output + "'");
      out.str("");
    }
  } catch (const Error& e) {
    result.exit_code = exit_for(e.code());
    err << "error[" << to_string(e.code()) << "]: " << e.what() << "\n";
  } catch (const std::exception& e) {
    result.exit_code = exit_code::kCrossCheck;
    err << "error[INTERNAL]: " << e.what() << "\n";
  }
  result.out = out.str();
  result.err = err.str();
  return result;
}

}  // namespace hk
