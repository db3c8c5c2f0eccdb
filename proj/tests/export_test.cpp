#include "bamboo/calculus.hpp"
#include "bamboo/constructors.hpp"
#include "bamboo/export.hpp"
#include "bamboo/serialize.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace bamboo;

namespace {

std::vector<std::string> body_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

}  // namespace

TEST(Export, GenusOne) {
  EXPECT_EQ(export_admcycles(make_B(1)),
            "# bamboo-export 1\n"
            "QQ('1/1') * decstrat(genera=[1], legs=[[1,2]], edges=[], psi={2:2})\n");
}

TEST(Export, GenusTwoHasThreeLines) {
  const std::string text = export_admcycles(make_B(2));
  auto lines = body_lines(text);
  ASSERT_EQ(lines.size(), make_B(2).size());
  EXPECT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "QQ('1/1') * decstrat(genera=[2], legs=[[1,2]], edges=[], psi={2:4})");
  EXPECT_EQ(lines[1], "QQ('-1/1') * decstrat(genera=[1,1], legs=[[1,11],[2,12]], edges=[(11,12)], psi={2:3})");
  EXPECT_EQ(lines[2], "QQ('-1/1') * decstrat(genera=[1,1], legs=[[1,11],[2,12]], edges=[(11,12)], psi={2:2,11:1})");
}

TEST(Export, RoundTripIsExact) {
  for (int g = 1; g <= 4; ++g) {
    for (const FormalSum& s : {make_B(g), reflect(make_B(g)), make_B_onepoint(g), pullback_forget(make_B(g))}) {
      FormalSum back = parse_admcycles(export_admcycles(s));
      EXPECT_EQ(back, s) << g;
      EXPECT_EQ(canonical_json(back), canonical_json(s));
    }
  }
}

TEST(Export, ThreeLeggedTermsRoundTrip) {
  FormalSum s = diamond(make_B(1), FormalSum(unit03())) + make_rational(-5, 3) * FormalSum(unit03());
  EXPECT_EQ(parse_admcycles(export_admcycles(s)), s);
}

TEST(Export, RejectsOmegaAndUnit) {
  EXPECT_THROW(export_admcycles(omega_apply(make_B(1), OmegaClass{OmegaKind::Irr, 0})), std::invalid_argument);
  EXPECT_THROW(export_admcycles(FormalSum(unit_term())), std::invalid_argument);
}

TEST(Parse, ReportsLineNumbers) {
  const std::string good = export_admcycles(make_B(2));
  const auto check = [](const std::string& text, std::size_t line) {
    try {
      parse_admcycles(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const ExportParseError& e) {
      EXPECT_EQ(e.line(), line) << e.what();
    }
  };
  check(good + "QQ('1/1') * decstrat(genera=[1], legs=[[1,2]], edges=[], psi={2:2}) x\n", 5);
  check("# bamboo-export 1\nQQ('1/0') * decstrat(genera=[1], legs=[[1,2]], edges=[], psi={2:2})\n", 2);
  // not a chain
  check("# bamboo-export 1\nQQ('1/1') * decstrat(genera=[1,1], legs=[[1,11],[2,12]], edges=[], psi={})\n", 2);
  // psi on a half-edge that is not there
  check("# bamboo-export 1\nQQ('1/1') * decstrat(genera=[1], legs=[[1,2]], edges=[], psi={3:1})\n", 2);
  // unstable genus-0 vertex
  check("# bamboo-export 1\nQQ('1/1') * decstrat(genera=[0], legs=[[1,2]], edges=[], psi={})\n", 2);
  // repeated graph
  check("# bamboo-export 1\n" + body_lines(good)[0] + "\n\n" + body_lines(good)[0] + "\n", 4);
}
