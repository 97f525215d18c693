#include <doctest.h>

#include "specworld/kernel.hpp"

using namespace specworld;

namespace {

// A tiny framework over string lengths: interpret wraps the length, sim
// compares lengths, bottom is adjoined as minimum.
SemanticalFramework length_framework() {
    SemanticalFramework fw;
    fw.id = "length";
    fw.interpret = [](const Str& s) -> SemObject {
        if (s.empty()) return SemObject::bottom();
        return SemObject::of<std::size_t>(s.size());
    };
    fw.sim = [](const SemObject& x, const SemObject& y) {
        if (x.is_bottom()) return true;
        if (y.is_bottom()) return false;
        return *x.as<std::size_t>() <= *y.as<std::size_t>();
    };
    return fw;
}

}  // namespace

TEST_CASE("truth assignments default to meaningless") {
    TruthAssignment u = make_truth_assignment({});
    CHECK(u("anything") == TruthValue::Meaningless);
    CHECK(u("") == TruthValue::Meaningless);
}

TEST_CASE("truth assignments answer stored entries and default elsewhere") {
    TruthAssignment u =
        make_truth_assignment({{"enabled(out!1)", TruthValue::True}});
    CHECK(u("enabled(out!1)") == TruthValue::True);
    CHECK(u("zzz") == TruthValue::Meaningless);
}

TEST_CASE("the empty string cannot be marked true or false") {
    CHECK_THROWS_AS(make_truth_assignment({{"", TruthValue::True}}),
                    RejectedEmptyString);
    CHECK_THROWS_AS(make_truth_assignment({{"", TruthValue::False}}),
                    RejectedEmptyString);
    // An explicit meaningless entry is the default and is simply dropped.
    TruthAssignment u = make_truth_assignment({{"", TruthValue::Meaningless}});
    CHECK(u("") == TruthValue::Meaningless);
    CHECK(u.entries().empty());
}

TEST_CASE("stored entries never include meaningless values or the empty string") {
    TruthAssignment u = make_truth_assignment(
        {{"a", TruthValue::True}, {"b", TruthValue::Meaningless}, {"c", TruthValue::False}});
    CHECK(u.entries().size() == 2);
    CHECK(u("b") == TruthValue::Meaningless);
}

TEST_CASE("framework laws pass on a well-behaved framework") {
    std::vector<Str> samples{"x", "xy", "xyz"};
    LawReport report = check_framework_laws(length_framework(), samples);
    CHECK(report.all_passed());
    CHECK(report.checks.size() == 4);
}

TEST_CASE("framework laws pass with an empty sample") {
    LawReport report = check_framework_laws(length_framework(), {});
    CHECK(report.all_passed());
}

TEST_CASE("a constantly-false sim fails reflexivity with a witness") {
    SemanticalFramework fw = length_framework();
    fw.sim = [](const SemObject&, const SemObject&) { return false; };
    std::vector<Str> samples{"p"};
    LawReport report = check_framework_laws(fw, samples);
    CHECK_FALSE(report.all_passed());
    bool found = false;
    for (const auto& check : report.checks) {
        if (check.law == "sim reflexive") {
            found = true;
            CHECK_FALSE(check.passed);
            CHECK_FALSE(check.witness.empty());
        }
    }
    CHECK(found);
}

TEST_CASE("a framework whose empty program is not bottom fails the empty law") {
    SemanticalFramework fw = length_framework();
    fw.interpret = [](const Str&) { return SemObject::of<std::size_t>(1); };
    LawReport report = check_framework_laws(fw, {});
    CHECK_FALSE(report.all_passed());
    CHECK_FALSE(report.checks.front().passed);
}

TEST_CASE("program simulation lifts sim through interpret") {
    SemanticalFramework fw = length_framework();
    CHECK(program_simulates(fw, "abc", "abc"));
    CHECK(program_simulates(fw, "ab", "abc"));
    CHECK_FALSE(program_simulates(fw, "abc", "ab"));
    CHECK(program_simulates(fw, "", "anything"));  // bottom is minimal
    CHECK(bisimilar(fw, "abc", "xyz"));
    CHECK_FALSE(bisimilar(fw, "ab", "abc"));
}

TEST_CASE("sem objects distinguish bottom and typed payloads") {
    SemObject bottom = SemObject::bottom();
    CHECK(bottom.is_bottom());
    CHECK(bottom.identity() == nullptr);

    SemObject five = SemObject::of<int>(5);
    CHECK_FALSE(five.is_bottom());
    REQUIRE(five.as<int>() != nullptr);
    CHECK(*five.as<int>() == 5);
    CHECK(five.as<double>() == nullptr);

    SemObject copy = five;
    CHECK(copy.identity() == five.identity());
}

TEST_CASE("specification validation rejects empty and duplicate ids") {
    Specification empty;
    CHECK_THROWS_AS(validate_specification(empty), Error);

    PossibleWorld w;
    w.id = "w";
    w.respond = [](const Str&, const Str&, const Action&, std::size_t) {
        return WorldResponse{};
    };
    Specification dup{{w, w}};
    CHECK_THROWS_AS(validate_specification(dup), Error);

    Specification ok{{w}};
    CHECK_NOTHROW(validate_specification(ok));
    CHECK(ok.find("w") != nullptr);
    CHECK(ok.find("missing") == nullptr);
}

TEST_CASE("actions and evidence compare structurally") {
    Action a1{"commit", {{"rev", "1"}}};
    Action a2{"commit", {{"rev", "1"}}};
    Action a3{"commit", {{"rev", "2"}}};
    CHECK(a1 == a2);
    CHECK(a1 != a3);

    Evidence e1{"ok", {}};
    Evidence e2{"c0", {}};
    CHECK(e1 != e2);
    CHECK((e1 < e2 || e2 < e1));
}
