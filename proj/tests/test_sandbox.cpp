#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "imagine/sandbox.hpp"
#include "support/fixtures.hpp"

using namespace imagine;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "imagine_sandbox_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Sandbox, SameSeedSameSandbox) {
  for (auto profile : {SandboxProfile::Tiny, SandboxProfile::Standard}) {
    const auto a = generate_sandbox(42, profile);
    const auto b = generate_sandbox(42, profile);
    EXPECT_EQ(a, b);
    EXPECT_EQ(serialize_sandbox(a), serialize_sandbox(b));
  }
}

TEST(Sandbox, SeedsDiffer) {
  EXPECT_NE(serialize_sandbox(generate_sandbox(1, SandboxProfile::Tiny)),
            serialize_sandbox(generate_sandbox(2, SandboxProfile::Tiny)));
}

TEST(Sandbox, GeneratedSandboxesValidate) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_NO_THROW(validate(generate_sandbox(seed, SandboxProfile::Tiny))) << seed;
    EXPECT_NO_THROW(validate(generate_sandbox(seed, SandboxProfile::Standard))) << seed;
  }
  EXPECT_NO_THROW(validate(fixtures::world()));
}

TEST(Sandbox, SameRegionPairsHaveTaxiAndDriving) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto sb = generate_sandbox(seed, SandboxProfile::Tiny);
    for (const auto& a : sb.cities)
      for (const auto& b : sb.cities) {
        if (a.name == b.name || a.state != b.state) continue;
        bool taxi = false, drive = false;
        for (const auto& l : sb.links_between(a.name, b.name)) {
          taxi = taxi || l.mode == TransportMode::Taxi;
          drive = drive || l.mode == TransportMode::SelfDriving;
        }
        EXPECT_TRUE(taxi && drive) << a.name << " -> " << b.name;
      }
  }
}

TEST(Sandbox, FlightCoverageIsPartial) {
  const auto sb = generate_sandbox(42, SandboxProfile::Standard);
  int pairs = 0, flown = 0;
  for (const auto& a : sb.cities)
    for (const auto& b : sb.cities) {
      if (a.name == b.name) continue;
      ++pairs;
      for (const auto& l : sb.links_between(a.name, b.name))
        if (l.mode == TransportMode::Flight) {
          ++flown;
          break;
        }
    }
  EXPECT_GT(flown, 0);
  EXPECT_LT(flown, pairs);
}

TEST(Sandbox, FlightsCarryUniqueNumbersAndCalendarDates) {
  const auto sb = generate_sandbox(7, SandboxProfile::Standard);
  std::set<std::string> numbers;
  const Date last = kCalendarStart.plus_days(kCalendarDays - 1);
  for (const auto& l : sb.links) {
    if (l.mode != TransportMode::Flight) {
      EXPECT_FALSE(l.flight_number.has_value());
      EXPECT_TRUE(l.date_availability.empty());
      continue;
    }
    ASSERT_TRUE(l.flight_number.has_value());
    EXPECT_TRUE(numbers.insert(*l.flight_number).second) << *l.flight_number;
    for (const auto& d : l.date_availability) {
      EXPECT_LE(kCalendarStart, d);
      EXPECT_LE(d, last);
    }
  }
}

TEST(Sandbox, FileRoundTrip) {
  const auto sb = generate_sandbox(42, SandboxProfile::Tiny);
  const auto path = scratch("roundtrip.json");
  save_sandbox(sb, path);
  EXPECT_EQ(load_sandbox(path), sb);
  const auto doc = parse_json_text(read_text_file(path), path.string());
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"cities", "links", "restaurants", "attractions", "accommodations",
                                            "seed"}));
}

TEST(Sandbox, TruncatedFileIsParseError) {
  const auto text = serialize_sandbox(generate_sandbox(42, SandboxProfile::Tiny));
  const auto path = scratch("truncated.json");
  write_text_file(path, text.substr(0, text.size() / 2));
  try {
    load_sandbox(path);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), "parse_error");
  }
}

TEST(Sandbox, UnknownCityNamesTheRecord) {
  auto doc = to_json(fixtures::world());
  doc["restaurants"][4]["city"] = "Atlantis";
  try {
    sandbox_from_json(doc);
    FAIL() << "expected an invariant violation";
  } catch (const InvariantError& e) {
    EXPECT_NE(std::string(e.what()).find("restaurants[4]"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("Atlantis"), std::string::npos) << e.what();
  }
}

TEST(Sandbox, MissingFileIsIoError) {
  EXPECT_THROW(load_sandbox(scratch("does-not-exist.json")), IoError);
}

TEST(Sandbox, RoomsRoundUp) {
  Accommodation a;
  a.max_occupancy = 2;
  EXPECT_EQ(a.rooms_for(1), 1);
  EXPECT_EQ(a.rooms_for(2), 1);
  EXPECT_EQ(a.rooms_for(3), 2);
}
