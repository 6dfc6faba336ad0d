#include <doctest.h>

#include "tps/parse.hpp"

using namespace tps;

namespace {

const char* kCatalogXml = R"(<?xml version="1.0"?>
<!DOCTYPE catalog>
<catalog>
  <book id="1">
    <author><name>John</name></author>
    <chapter><title>databases</title><section>XML</section></chapter>
    <!-- a second chapter -->
    <chapter><title>queries</title></chapter>
  </book>
</catalog>
)";

}  // namespace

TEST_CASE("parse_tree examples") {
  SUBCASE("pattern") {
    const auto t = parse_tree("a(c(a),b)");
    CHECK(t.size() == 4);
    CHECK(t.text(t.root()) == "a");
    REQUIRE(t.children(t.root()).size() == 2);
    const NodeId c = t.children(t.root())[0];
    CHECK(t.text(c) == "c");
    CHECK(t.text(t.children(t.root())[1]) == "b");
    REQUIRE(t.children(c).size() == 1);
    CHECK(t.text(t.children(c)[0]) == "a");
    CHECK_FALSE(find_violation(t));
  }
  SUBCASE("single node") {
    const auto t = parse_tree("x");
    CHECK(t.size() == 1);
    CHECK(t.is_leaf(t.root()));
    CHECK(t.leaf(1) == t.root());
  }
  SUBCASE("target") {
    const auto t = parse_tree("a(c(a(b),b(b)))");
    CHECK(t.size() == 6);
    std::string labels;
    for (NodeId v : t.preorder()) labels += t.text(v);
    CHECK(labels == "acabbb");
    CHECK(t.leaf_count() == 2);
  }
}

TEST_CASE("parse_tree syntax") {
  CHECK(parse_tree("  a ( b , c )\n").size() == 3);
  const auto q = parse_tree(R"("x y"("a,b","q\"\\"))");
  CHECK(q.text(0) == "x y");
  CHECK(q.text(1) == "a,b");
  CHECK(q.text(2) == "q\"\\");
  CHECK_THROWS_AS(parse_tree(""), ParseError);
  CHECK_THROWS_AS(parse_tree("a(b"), ParseError);
  CHECK_THROWS_AS(parse_tree("a(b))"), ParseError);
  CHECK_THROWS_AS(parse_tree("a()"), ParseError);
  CHECK_THROWS_AS(parse_tree("a b"), ParseError);
  CHECK_THROWS_AS(parse_tree("\"open"), ParseError);
  try {
    parse_tree("a(b,)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("format_tree round trip") {
  for (const char* text : {"a", "a(c(a),b)", "a(c(a(b),b(b)))", R"("x y"("a,b","(",b))", R"("")"}) {
    const auto t = parse_tree(text);
    const auto again = parse_tree(format_tree(t));
    REQUIRE(again.size() == t.size());
    for (NodeId v = 0; v < t.size(); ++v) {
      CHECK(again.text(v) == t.text(v));
      CHECK(again.parent(v) == t.parent(v));
    }
  }
  CHECK(format_tree(parse_tree(" a ( b ,c ) ")) == "a(b,c)");
  CHECK(quote_label("a/b", "/") == "\"a/b\"");
  CHECK(quote_label("ab", "/") == "ab");
}

TEST_CASE("deep trees parse and format without recursion") {
  std::string text;
  const int depth = 200000;
  for (int i = 0; i < depth; ++i) text += "a(";
  text += "b";
  text += std::string(depth, ')');
  const auto t = parse_tree(text);
  CHECK(t.size() == depth + 1);
  CHECK(t.height() == depth);
  CHECK(format_tree(t) == text);
}

TEST_CASE("parse_xml examples") {
  SUBCASE("fragment") {
    const auto t = parse_xml("<book><author>John</author></book>");
    REQUIRE(t.size() == 3);
    CHECK(t.text(0) == "book");
    CHECK(t.text(1) == "author");
    CHECK(t.text(2) == "John");
    CHECK(t.parent(2) == 1);
  }
  SUBCASE("self closing") {
    const auto t = parse_xml("<a/>");
    CHECK(t.size() == 1);
    CHECK(t.text(0) == "a");
  }
  SUBCASE("catalog") {
    const auto t = parse_xml(kCatalogXml);
    CHECK(t.size() == 13);
    CHECK(t.leaf_count() == 4);
    CHECK(t.text(t.leaf(3)) == "XML");
    CHECK_FALSE(find_violation(t));
  }
  SUBCASE("entities and CDATA") {
    const auto t = parse_xml("<a>x &amp; y&#33;<![CDATA[ignored]]><?pi?></a>");
    REQUIRE(t.size() == 2);
    CHECK(t.text(1) == "x & y!");
  }
}

TEST_CASE("parse_xml errors") {
  CHECK_THROWS_AS(parse_xml(""), ParseError);
  CHECK_THROWS_AS(parse_xml("<a><b></a>"), ParseError);
  CHECK_THROWS_AS(parse_xml("<a></a><b/>"), ParseError);
  CHECK_THROWS_AS(parse_xml("<a>"), ParseError);
  CHECK_THROWS_AS(parse_xml("text<a/>"), ParseError);
}
