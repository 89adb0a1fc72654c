#pragma once

// A small hand-built world whose verdicts can be worked out by hand.
//
//   North: Aston, Brill        South: Corde
//   Aston <-> Brill   taxi 30, self-driving 50 (each way)
//   Aston  -> Corde   F0001 200/person on 03-01, 03-03; self-driving 400
//   Corde  -> Aston   F0002 180/person on 03-03, 03-05; self-driving 400
//
//   restaurants (per person)
//     Aston  Olive Tree 20 Italian | Lotus 15 Chinese | Stack 10 American
//     Brill  Pier 25 Seafood       | Fuego 18 Mexican | Kettle 8 Cafe
//     Corde  Bistro Nine 30 French | Wok On 12 Chinese | Dough 14 Pizza
//   attractions
//     Aston Old Mill | Brill Harbour Walk, Clock Tower | Corde Museum of Rails
//   accommodations (per room per night)
//     Brill  Quay House  entire 120, sleeps 4, No parties, min 1
//     Brill  Bunk Loft   shared 40,  sleeps 2, -,          min 2
//     Corde  Garden Inn  private 90, sleeps 2, No smoking, min 1

#include <string>
#include <vector>

#include "imagine/plan.hpp"
#include "imagine/query.hpp"
#include "imagine/sandbox.hpp"

namespace fixtures {

using namespace imagine;

inline Date d(unsigned month, unsigned day) { return Date(2022, month, day); }

inline Sandbox world() {
  Sandbox sb;
  sb.seed = 0;
  sb.cities = {{"Aston", "North"}, {"Brill", "North"}, {"Corde", "South"}};
  auto ground = [](std::string a, std::string b, TransportMode m, int cost) {
    return TransportLink{std::move(a), std::move(b), m, cost, 60, std::nullopt, {}};
  };
  sb.links = {
      ground("Aston", "Brill", TransportMode::Taxi, 30),
      ground("Brill", "Aston", TransportMode::Taxi, 30),
      ground("Aston", "Brill", TransportMode::SelfDriving, 50),
      ground("Brill", "Aston", TransportMode::SelfDriving, 50),
      TransportLink{"Aston", "Corde", TransportMode::Flight, 200, 120, "F0001", {d(3, 1), d(3, 3)}},
      TransportLink{"Corde", "Aston", TransportMode::Flight, 180, 120, "F0002", {d(3, 3), d(3, 5)}},
      ground("Aston", "Corde", TransportMode::SelfDriving, 400),
      ground("Corde", "Aston", TransportMode::SelfDriving, 400),
  };
  sb.restaurants = {
      {"Olive Tree", "Aston", {"Italian"}, 20}, {"Lotus", "Aston", {"Chinese"}, 15},
      {"Stack", "Aston", {"American"}, 10},     {"Pier", "Brill", {"Seafood"}, 25},
      {"Fuego", "Brill", {"Mexican"}, 18},      {"Kettle", "Brill", {"Cafe"}, 8},
      {"Bistro Nine", "Corde", {"French"}, 30}, {"Wok On", "Corde", {"Chinese"}, 12},
      {"Dough", "Corde", {"Pizza"}, 14},
  };
  sb.attractions = {{"Old Mill", "Aston"},
                    {"Harbour Walk", "Brill"},
                    {"Clock Tower", "Brill"},
                    {"Museum of Rails", "Corde"}};
  sb.accommodations = {
      {"Quay House", "Brill", RoomType::EntireRoom, 120, {"No parties"}, 4, 1},
      {"Bunk Loft", "Brill", RoomType::SharedRoom, 40, {}, 2, 2},
      {"Garden Inn", "Corde", RoomType::PrivateRoom, 90, {"No smoking"}, 2, 1},
  };
  return sb;
}

/// Aston -> Brill -> Aston, 3 days from 2022-03-01, 2 people, budget 600.
inline Query brill_trip() {
  Query q;
  q.query_id = "fx-brill";
  q.origin = "Aston";
  q.destination = {"Brill"};
  q.days = 3;
  q.visiting_city_number = 1;
  q.date = {d(3, 1), d(3, 2), d(3, 3)};
  q.people_number = 2;
  q.budget = 600;
  q.level = Level::Easy;
  q.query_text = "fixture";
  return q;
}

/// Aston -> Corde -> Aston, 3 days from 2022-03-03, 1 person, budget 800.
inline Query corde_trip() {
  Query q;
  q.query_id = "fx-corde";
  q.origin = "Aston";
  q.destination = {"Corde"};
  q.days = 3;
  q.visiting_city_number = 1;
  q.date = {d(3, 3), d(3, 4), d(3, 5)};
  q.people_number = 1;
  q.budget = 800;
  q.level = Level::Easy;
  q.query_text = "fixture";
  return q;
}

inline DayEntry day(int n, std::string city, std::string transport, std::string b, std::string l,
                    std::string dn, std::string attraction, std::string stay) {
  return DayEntry{n, std::move(city), std::move(transport), std::move(b), std::move(l),
                  std::move(dn), std::move(attraction), std::move(stay)};
}

/// Passes every check for brill_trip(). Cost: taxi 30 + 30, meals
/// (25 + 18 + 8) x 2 = 102, Quay House 120 x 1 room x 2 nights = 240;
/// total 402.
inline TravelPlan good_brill_plan() {
  return TravelPlan{{
      day(1, "from Aston to Brill", "Taxi, from Aston to Brill", "-", "-", "-", "Harbour Walk, Brill;",
          "Quay House, Brill"),
      day(2, "Brill", "-", "Pier, Brill", "Fuego, Brill", "Kettle, Brill", "Clock Tower, Brill;",
          "Quay House, Brill"),
      day(3, "from Brill to Aston", "Taxi, from Brill to Aston", "-", "-", "-", "-", "-"),
  }};
}

/// Passes every check for corde_trip(). Cost: 200 + 180 flights, meals
/// 30 + 12 + 14 = 56, Garden Inn 90 x 2 = 180; total 616.
inline TravelPlan good_corde_plan() {
  return TravelPlan{{
      day(1, "from Aston to Corde", "Flight Number: F0001, from Aston to Corde", "-", "-", "-", "-",
          "Garden Inn, Corde"),
      day(2, "Corde", "-", "Bistro Nine, Corde", "Wok On, Corde", "Dough, Corde", "Museum of Rails, Corde;",
          "Garden Inn, Corde"),
      day(3, "from Corde to Aston", "Flight Number: F0002, from Corde to Aston", "-", "-", "-", "-", "-"),
  }};
}

inline std::string wrap(const std::string& think, const std::string& answer) {
  return "<think>" + think + "</think>" + answer;
}

}  // namespace fixtures
