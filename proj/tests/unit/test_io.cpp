#include <gtest/gtest.h>

#include <sstream>

#include "potentialforge/error.hpp"
#include "potentialforge/io.hpp"
#include "support.hpp"

using namespace potentialforge;

namespace {

std::string field_of(const std::string& text) {
  try {
    parse_game_file(text);
  } catch (const ParseError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST(GameFile, DenseObjective) {
  const GameFile f = parse_game_file(
      R"({"players":2,"cardinalities":[2,3],"neighbors":[[2],[1]],)"
      R"("objective":{"dense":[1,2,3,4,5,6]}})");
  EXPECT_EQ(f.game.dims(), (Dims{2, 3}));
  ASSERT_TRUE(f.objective.has_value());
  EXPECT_EQ(eval(*f.objective, Profile{1, 0}, f.game.dims()), 4.0);
  EXPECT_FALSE(f.game.has_utilities());
}

TEST(GameFile, SparseObjectiveIsOneBased) {
  const GameFile f = parse_game_file(
      R"({"players":2,"cardinalities":[2,2],"neighbors":[[],[]],)"
      R"("objective":{"sparse":{"4":2.5,"1":-1}}})");
  EXPECT_EQ(lift(*f.objective, f.game.dims()),
            (std::vector<double>{-1, 0, 0, 2.5}));
}

TEST(GameFile, OptionalUtilities) {
  const GameFile f = parse_game_file(
      R"({"players":2,"cardinalities":[2,2],"neighbors":[[2],[1]],)"
      R"("utilities":[{"scope":[1],"values":[0,1]},)"
      R"({"scope":[1,2],"values":[0,1,2,3]}]})");
  ASSERT_TRUE(f.game.has_utilities());
  EXPECT_EQ(f.game.utility(0).scope().size(), 2u);
  EXPECT_FALSE(f.objective.has_value());
}

TEST(GameFile, ErrorsNameTheField) {
  EXPECT_EQ(field_of("[1,2"), "");
  EXPECT_EQ(field_of(R"({"cardinalities":[2]})"), "players");
  EXPECT_EQ(field_of(R"({"players":2,"cardinalities":[2],"neighbors":[[],[]]})"),
            "cardinalities");
  EXPECT_EQ(field_of(R"({"players":1,"cardinalities":[1],"neighbors":[[]]})"),
            "cardinalities[0]");
  EXPECT_EQ(field_of(R"({"players":2,"cardinalities":[2,2],"neighbors":[[3],[]]})"),
            "neighbors[0][0]");
  EXPECT_EQ(field_of(R"({"players":2,"cardinalities":[2,2],"neighbors":[[1],[]]})"),
            "neighbors");
  EXPECT_EQ(field_of(R"({"players":1,"cardinalities":[2],"neighbors":[[]],)"
                     R"("objective":{"dense":[1]}})"),
            "objective.dense");
  EXPECT_EQ(field_of(R"({"players":1,"cardinalities":[2],"neighbors":[[]],)"
                     R"("objective":{"sparse":{"3":1}}})"),
            "objective.sparse.3");
  EXPECT_EQ(field_of(R"({"players":1,"cardinalities":[2],"neighbors":[[]],)"
                     R"("objective":{"dense":[1,"x"]}})"),
            "objective.dense[1]");
  EXPECT_EQ(field_of(R"({"players":1,"cardinalities":[2],"neighbors":[[]],)"
                     R"("objective":[1,2]})"),
            "objective");
  EXPECT_EQ(field_of(R"({"players":2,"cardinalities":[2,2],"neighbors":[[],[]],)"
                     R"("utilities":[{"scope":[1],"values":[0,1]},)"
                     R"({"scope":[1],"values":[0,1]}]})"),
            "utilities");
}

TEST(GameFile, RoundTrip) {
  std::mt19937_64 gen(4);
  const NetworkedGame g = pf_test::line_game({2, 3, 2});
  const GameFunction phi =
      GameFunction::full(g.dims(), pf_test::random_vector(gen, 12));
  const GameFile back = parse_game_file(game_file_to_json(g, phi));
  EXPECT_EQ(back.game.dims(), g.dims());
  EXPECT_EQ(lift(*back.objective, g.dims()), lift(phi, g.dims()));
  for (PlayerId i = 0; i < 3; ++i) {
    EXPECT_EQ(std::vector<PlayerId>(back.game.neighbors(i).begin(),
                                    back.game.neighbors(i).end()),
              std::vector<PlayerId>(g.neighbors(i).begin(),
                                    g.neighbors(i).end()));
  }
}

TEST(DesignFile, RoundTripAndUtilities) {
  std::mt19937_64 gen(6);
  const NetworkedGame g = pf_test::line_game({2, 2, 2});
  const auto phi = pf_test::random_vector(gen, 8);
  const DesignSolution sol = solve_min_norm(g, phi);
  const std::string text = design_solution_to_json(sol);
  const DesignSolution back = parse_design_solution(text);
  ASSERT_EQ(back.players.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.players[i].xi1, sol.players[i].xi1);
    EXPECT_EQ(back.players[i].xi2, sol.players[i].xi2);
    EXPECT_EQ(back.players[i].scope, sol.players[i].scope);
    EXPECT_EQ(back.players[i].feasible, sol.players[i].feasible);
    EXPECT_EQ(back.players[i].family_dim, sol.players[i].family_dim);
  }
  EXPECT_EQ(back.tolerance, sol.tolerance);

  // Without chosen utilities, xi1 is the utility.
  const std::vector<GameFunction> us = parse_utilities(text, g.dims());
  EXPECT_EQ(std::vector<double>(us[0].values().begin(), us[0].values().end()),
            sol.players[0].xi1);

  // With them, the "utility" field wins.
  std::vector<ChosenUtility> chosen;
  for (std::size_t i = 0; i < 3; ++i) {
    chosen.push_back({std::vector<double>(sol.players[i].family_dim, 1.0),
                      family_member(g, sol, i, std::vector<double>(sol.players[i].family_dim, 1.0))});
  }
  const std::vector<GameFunction> us1 =
      parse_utilities(design_solution_to_json(sol, chosen, "ones"), g.dims());
  EXPECT_EQ(std::vector<double>(us1[1].values().begin(), us1[1].values().end()),
            chosen[1].values);
}

TEST(UtilitiesFile, DimensionMismatch) {
  const Dims d{2, 2};
  EXPECT_THROW(parse_utilities(R"({"utilities":[{"scope":[1],"values":[1,2,3]},)"
                               R"({"scope":[2],"values":[1,2]}]})",
                               d),
               ParseError);
  EXPECT_THROW(parse_utilities(R"({"utilities":[]})", d), ParseError);
}

TEST(RestrictionFile, RoundTrip) {
  const Dims d{3};
  const Restriction r(d, {{{0, 1}, {0, 1, 2}, {1, 2}}});
  const Restriction back = parse_restriction(restriction_to_json(r), d);
  for (Strategy x = 0; x < 3; ++x) {
    EXPECT_EQ(std::vector<Strategy>(back.available(0, x).begin(),
                                    back.available(0, x).end()),
              std::vector<Strategy>(r.available(0, x).begin(),
                                    r.available(0, x).end()));
  }
  EXPECT_THROW(parse_restriction(R"({"sets":[[[0]]]})", d), ParseError);
  EXPECT_THROW(parse_restriction(R"({"sets":[[[2],[2],[3]]]})", d),
               InvalidRestriction);
}

TEST(TrajectoryCsv, HeaderAndRows) {
  Trajectory t;
  t.records.push_back({0, 0.0, std::nullopt, Profile{0, 2}, 0.1});
  t.records.push_back({1, 0.02, PlayerId{1}, Profile{0, 1}, 1.0 / 3.0});
  std::ostringstream out;
  write_trajectory_csv(out, t, Dims{2, 3});
  EXPECT_EQ(out.str(),
            "t,beta,player,profile_index,x_1,x_2,phi\n"
            "0,0,0,3,1,3,0.10000000000000001\n"
            "1,0.02,2,2,1,2,0.33333333333333331\n");
}

TEST(FormatDouble, RoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}
