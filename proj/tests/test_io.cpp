#include <gtest/gtest.h>

#include "divfan/corpus.hpp"
#include "test_util.hpp"

using namespace divfan;
using divfan::testing::interval;
using divfan::testing::iv;
using divfan::testing::point1;
using json = nlohmann::json;

TEST(Json, NumbersAndRationals) {
  EXPECT_EQ(io::rational_from(json("3/6")), Rational(1, 2));
  EXPECT_EQ(io::rational_from(json(-4)), Rational(-4));
  EXPECT_EQ(io::to_json(Rational(1, 2)), json("1/2"));
  EXPECT_EQ(io::to_json(Rational(5)), json(5));
  EXPECT_EQ(io::integer_from(json("123456789012345678901234567890")), Integer("123456789012345678901234567890"));
  EXPECT_THROW(io::rational_from(json("1/0")), InputError);
  EXPECT_THROW(io::int_vector_from(json::array({1, 2}), 3), InputError);
}

TEST(Json, IntervalNotation) {
  EXPECT_EQ(io::interval_from("[1,inf)"), interval("1", "inf"));
  EXPECT_EQ(io::interval_from("(-inf,1/2]"), interval("-inf", "1/2"));
  EXPECT_EQ(io::interval_from("[-1,0]"), interval("-1", "0"));
  EXPECT_EQ(io::interval_from("{-3}"), point1("-3"));
  EXPECT_TRUE(io::interval_from("EMPTY").is_empty());
  EXPECT_EQ(io::interval_from("(-inf,inf)").lineality().size(), 1u);
  for (const char* bad : {"[1,inf]", "(0,1]", "1,2", "[a,1]"}) EXPECT_THROW(io::interval_from(bad), InputError) << bad;
  for (const char* s : {"[1,inf)", "(-inf,-2/3]", "[0,1]", "{0}", "EMPTY", "(-inf,inf)"})
    EXPECT_EQ(io::interval_from(s).to_string(), s);
}

TEST(Json, HigherRankPolyhedraAndCones) {
  const Polyhedron p = Polyhedron::from_vertices(2, {{Rational(1), Rational(0)}, {Rational(0), Rational(1, 3)}}, {iv({1, 1})});
  EXPECT_EQ(io::polyhedron_from(io::to_json(p), 2), p);
  const Cone c = Cone::from_inequalities(3, {iv({1, 0, 0})}, {iv({0, 1, -1})});
  EXPECT_EQ(io::cone_from(io::to_json(c), 3), c);
  EXPECT_EQ(io::cone_from(json{{"inequalities", {{1, 0, 0}}}, {"equations", {{0, 1, -1}}}}, 3), c);
}

TEST(Json, LabelKeysRoundTrip) {
  for (const auto& l : {DivisorLabel::invariant(iv({1, -2})), DivisorLabel::orbit(iv({0, 3})), DivisorLabel::named("H0"),
                        DivisorLabel::named("∞"), DivisorLabel::translated("ab", "D")})
    EXPECT_EQ(io::label_from(l.key()), l) << l.key();
}

TEST(Templates, Substitution) {
  const corpus::Parameters n{{"n", Rational(3)}};
  EXPECT_EQ(corpus::substitute(json("{{n}}"), n), json(3));
  EXPECT_EQ(corpus::substitute(json("[{{n/(n+1)}},1]"), n), json("[3/4,1]"));
  EXPECT_EQ(corpus::substitute(json("{{-(n-1)*2}}"), n), json(-4));
  EXPECT_EQ(corpus::substitute(json("{{n/2}}"), n), json("3/2"));
  EXPECT_EQ(corpus::substitute(json::array({"{0}", "x"}), n), json::array({"{0}", "x"}));
  EXPECT_THROW(corpus::substitute(json("{{m}}"), n), InputError);
  EXPECT_THROW(corpus::substitute(json("{{n/(n-3)}}"), n), InputError);
  EXPECT_THROW(corpus::substitute(json("{{n+}}"), n), InputError);
  EXPECT_THROW(corpus::substitute(json("{{n"), n), InputError);
}

TEST(Table, PointLayoutAndRendering) {
  const Cone pos = Cone::from_generators(1, {iv({1})}), neg = Cone::from_generators(1, {iv({-1})});
  const auto x = DivisorLabel::named("x"), y = DivisorLabel::named("y");
  const DivisorialFan f(1, {PDivisor(pos, {{x, interval("1", "inf")}, {y, Polyhedron::empty(1)}}, ChartLabel{"c", {}, "", {}}),
                            PDivisor(neg, {{x, interval("-inf", "1")}}, ChartLabel{"d", {}, "a", {"a"}})});
  const Table t = make_table(f, {{{"a", "α"}}, {"y"}});
  ASSERT_TRUE(t.point_layout);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"(-inf,0]", "[0,inf)"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].label, "y");
  EXPECT_EQ(*t.rows[0].v, Rational(0));
  EXPECT_EQ(t.rows[0].cells, (std::vector<std::vector<std::string>>{{"α"}, {}}));
  EXPECT_EQ(*t.rows[1].v, Rational(1));
  EXPECT_EQ(t.rows[1].cells, (std::vector<std::vector<std::string>>{{"α"}, {"c"}}));
  const std::string text = render_table(t);
  EXPECT_NE(text.find("x | 1 | α        | c"), std::string::npos) << text;

  // two different vertices on one label: no point layout
  const DivisorialFan g(1, {PDivisor(pos, {{x, interval("1", "inf")}}), PDivisor(neg, {{x, interval("-inf", "2")}})});
  EXPECT_FALSE(make_table(g).point_layout);
  EXPECT_NE(render_table(make_table(g)).find("coefficient"), std::string::npos);
}

TEST(Corpus, RoundTripIsIdentity) {
  for (const auto& e : corpus::load_corpus()) {
    SCOPED_TRACE(e.name);
    if (e.datum) {
      const json a = io::to_json(*e.datum);
      EXPECT_EQ(io::to_json(io::datum_from(a)), a);
      const json b = io::to_json(*e.colored_fan);
      EXPECT_EQ(io::to_json(io::colored_fan_from(b)), b);
    }
    if (e.toric_model) {
      const json m = io::to_json(*e.toric_model);
      EXPECT_EQ(io::to_json(io::toric_model_from(m)), m);
    }
    const DivisorialFan f = corpus::produce(e);
    const json j = io::to_json(f);
    const DivisorialFan back = io::divisorial_fan_from(j);
    EXPECT_EQ(io::to_json(back), j);
    EXPECT_TRUE(equal_canonical(f, back, {}, true));
  }
}

TEST(Corpus, ShipsTheNamedEntries) {
  std::set<std::string> names;
  for (const auto& e : corpus::load_corpus()) names.insert(e.name);
  for (const char* n : {"c2_parabolic", "c2_elliptic", "c2_hyperbolic", "o_n_bundle", "o_n_bundle_diagonal", "p2_102",
                        "sl2u_a", "sl2u_b", "sl2u_c", "sl2u_d", "sl2u_e", "sl3_a", "sl3_b", "gl2_c4", "gl2_blc4",
                        "gl2_p4", "gl2_blp4", "grass24"})
    EXPECT_TRUE(names.count(n)) << n;
}

TEST(Corpus, CorruptedEntriesAreRejected) {
  json doc = corpus::read_json(std::string(corpus::default_dir) + "/sl2u_b.json");
  json bad = doc;
  bad["schema"] = "divfan/0";
  EXPECT_THROW(corpus::load_entry(bad), InputError);
  bad = doc;
  bad["datum"].erase("split");
  EXPECT_THROW(corpus::load_entry(bad), InputError);
  bad = doc;
  bad["colored_fan"]["cones"][0]["rays"] = json::array({json::array({1, 2})});
  EXPECT_THROW(corpus::load_entry(bad), InputError);
  bad = doc;
  bad["datum"]["color_action"].erase(1);
  EXPECT_THROW(corpus::load_entry(bad), Error);
  EXPECT_THROW(corpus::load_entry(doc, "", {{"n", Rational(1)}}), InputError);
}
