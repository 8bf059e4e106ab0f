// Copyright 2026 The nl2milp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "support/fixtures.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pipeline/pipeline.h"

namespace nl2milp::testing {

std::vector<std::string> haus_paragraphs() {
  return {
      "Haus Toys can make and sell toy trucks, toy aeroplanes, toy ships, "
      "and toy trains. The profit for each truck sold is $5, each aeroplane "
      "sold is $10, each ship sold is $8, and each train sold is $7. How "
      "many of each type of toys should Haus Toys make to maximise the "
      "profit?",
      "There are 890 units of timber available. The amount of timber "
      "required is 12 units for each truck, 20 units for each aeroplane, 15 "
      "units for each ship, and 10 units for each train.",
      "There are 500 units of steel available. The amount of steel required "
      "is 3 units for each aeroplane, 5 units for each ship, 4 units for "
      "each train, and 6 units for each truck.",
      "If Haus Toys makes trucks, then they will not make trains.",
      "If they make ships, however, they will also make aeroplanes.",
      "The number of toy ships made cannot exceed the number of trains made.",
      "Haus Toys must also make at least twice as many ships as aeroplanes.",
  };
}

MilpModel haus_truth_model() {
  MilpModel model;
  const std::vector<std::string> bases = {"trucks", "aeroplanes", "ships",
                                          "trains"};
  for (const std::string& name : bases) {
    model.variables.push_back(Variable{name, VariableKind::kInteger, "", {}});
  }
  for (const std::string& name : bases) {
    model.variables.push_back(
        Variable{"bi_" + name, VariableKind::kBinary, name, {}});
  }

  Objective obj;
  obj.direction = Direction::kMaximize;
  obj.expr.add("trucks", 5).add("aeroplanes", 10).add("ships", 8).add("trains",
                                                                      7);
  model.objective = obj;

  auto described = [&model](AffineExpression lhs, Sense sense,
                            AffineExpression rhs, int code, int paragraph) {
    Constraint c;
    c.lhs = std::move(lhs);
    c.sense = sense;
    c.rhs = std::move(rhs);
    c.ctype = ConstraintTag::typed(code);
    c.source = ConstraintSource::from_paragraph(paragraph);
    model.constraints.push_back(std::move(c));
  };

  AffineExpression timber;
  timber.add("trucks", 12).add("aeroplanes", 20).add("ships", 15).add("trains",
                                                                      10);
  described(timber, Sense::kLe, AffineExpression(890), 3, 1);

  AffineExpression steel;
  steel.add("trucks", 6).add("aeroplanes", 3).add("ships", 5).add("trains", 4);
  described(steel, Sense::kLe, AffineExpression(500), 3, 2);

  AffineExpression not_both;
  not_both.add("bi_trucks", 1).add("bi_trains", 1);
  described(not_both, Sense::kLe, AffineExpression(1), 13, 3);

  AffineExpression ships_imply;
  ships_imply.add("bi_ships", 1);
  AffineExpression aeroplanes_rhs;
  aeroplanes_rhs.add("bi_aeroplanes", 1);
  described(ships_imply, Sense::kLe, aeroplanes_rhs, 10, 4);

  AffineExpression ships_lhs;
  ships_lhs.add("ships", 1);
  AffineExpression trains_rhs;
  trains_rhs.add("trains", 1);
  described(ships_lhs, Sense::kLe, trains_rhs, 9, 5);

  AffineExpression twice_aero;
  twice_aero.add("aeroplanes", 2);
  AffineExpression ships_rhs;
  ships_rhs.add("ships", 1);
  described(twice_aero, Sense::kLe, ships_rhs, 9, 6);

  for (const std::string& name : bases) {
    Constraint bound_by_indicator;
    bound_by_indicator.lhs.add(name, 1);
    bound_by_indicator.rhs.add("bi_" + name, model.big_m);
    bound_by_indicator.ctype = ConstraintTag::linking();
    bound_by_indicator.source = ConstraintSource::supplemented();
    model.constraints.push_back(bound_by_indicator);

    Constraint indicator_by_quantity;
    indicator_by_quantity.lhs.add("bi_" + name, 1);
    indicator_by_quantity.rhs.add(name, 1);
    indicator_by_quantity.ctype = ConstraintTag::linking();
    indicator_by_quantity.source = ConstraintSource::supplemented();
    model.constraints.push_back(indicator_by_quantity);
  }
  return model;
}

std::string haus_description() {
  std::string joined;
  for (const std::string& paragraph : haus_paragraphs()) {
    if (!joined.empty()) joined += " ";
    joined += paragraph;
  }
  return joined;
}

ProblemInstance haus_instance() {
  ProblemInstance instance;
  instance.id = "haus_toys";
  instance.paragraphs = haus_paragraphs();
  instance.ground_truth = haus_truth_model();
  instance.sufficient_big_m = 89.0;
  return instance;
}

std::vector<LabeledDescription> cue_regression_set() {
  auto authored = [](const char* text, int label) {
    return LabeledDescription{text, label, DescriptionOrigin::kAuthored};
  };
  auto derived = [](const char* text, int label) {
    return LabeledDescription{text, label,
                              DescriptionOrigin::kNl4OptDerived};
  };
  return {
      authored("How many cars and trucks should the factory make to "
               "maximize the profit?",
               0),
      authored("The company wants to minimise the total cost of shipping.",
               0),
      authored("The bakery can make at most 40 chocolate cakes.", 1),
      authored("No more than 15 trucks can be sent to the northern depot.",
               1),
      derived("A waste treatment company must remove waste using a large "
              "container or a medium container. There must be at most 65 "
              "total containers.",
              2),
      authored("In total, the farm can raise at most 200 animals.", 2),
      authored("The two depots can hold at most 75 pallets combined.", 2),
      authored("Each chair requires 3 planks of wood and each table "
               "requires 7, and the shop has at most 560 planks available.",
               3),
      authored("Regular gadgets take 2 hours each and premium gadgets take "
               "5 hours each, and the total time used cannot exceed 1200 "
               "hours.",
               3),
      authored("At most 40% of the vehicles can be vans.", 4),
      authored("No more than a third of the total items may be fragile.", 4),
      authored("The club must recruit at least 20 new members this year.",
               5),
      authored("A minimum of 5 lifeguards must be on duty at all times.", 5),
      authored("Together the two warehouses must ship at least 300 boxes "
               "in total.",
               6),
      authored("The combined output of the two plants must be no less than "
               "90 units.",
               6),
      authored("Each small box holds 20 screws and each large box holds 50 "
               "screws, and the shipment must contain at least 600 screws "
               "altogether.",
               7),
      authored("Baskets are worth 3 points and free throws are worth 1 "
               "point respectively, and the team needs at least 80 points "
               "to win.",
               7),
      authored("At least 30% of the total rides in the park must be roller "
               "coasters.",
               8),
      authored("The fraction of premium seats must be no less than a "
               "quarter of all seats.",
               8),
      authored("The farmer must plant twice as many acres of corn as acres "
               "of soybeans.",
               9),
      authored("The number of buses used cannot exceed the number of vans "
               "used.",
               9),
      derived("If the store decides to order chairs from manufacturer A, "
              "they must also order at least 10 chairs from manufacturer "
              "B.",
              10),
      authored("If the store orders chairs from manufacturer A, then it "
               "must also order chairs from manufacturer B.",
               10),
      authored("The depot ships the goods if the order is confirmed.", 10),
      authored("The company must open either the north site or the south "
               "site, but not both.",
               11),
      authored("Exactly one of the three delivery routes can be selected.",
               11),
      authored("At least one of the two safety inspections must be "
               "performed before launch.",
               12),
      authored("The venue can host either the gala or the fair, or both.",
               12),
      authored("If the bridge is not repaired, then the ferry must "
               "operate.",
               12),
      authored("At most one of the two shifts can be assigned to overtime.",
               13),
      authored("If the crew paints the fence, then they cannot also paint "
               "the shed.",
               13),
      authored("If Haus Toys makes trucks, then they will not make trains.",
               13),
  };
}

ProblemInstance event_instance() {
  ProblemInstance instance;
  instance.id = "event_plan";
  instance.paragraphs = {
      "The gala would bring in 200 guests, the fair 150, and the concert "
      "300. Which of the three events should the town council put on to "
      "maximize total attendance?",
      "The gala and the fair cannot both be put on.",
      "If the gala is put on, then the concert must be put on as well.",
      "At least one of the fair and the concert must be put on.",
      "In total, at most two of the events can be put on.",
  };

  MilpModel model;
  model.variables = {
      Variable{"bi_gala", VariableKind::kBinary, "", {}},
      Variable{"bi_fair", VariableKind::kBinary, "", {}},
      Variable{"bi_concert", VariableKind::kBinary, "", {}},
  };
  Objective objective;
  objective.direction = Direction::kMaximize;
  objective.expr.add("bi_gala", 200).add("bi_fair", 150).add("bi_concert",
                                                             300);
  model.objective = objective;

  Constraint clash;
  clash.lhs.add("bi_gala", 1).add("bi_fair", 1);
  clash.sense = Sense::kLe;
  clash.rhs.constant = 1;
  clash.ctype = ConstraintTag::typed(13);
  clash.source = ConstraintSource::from_paragraph(1);
  model.constraints.push_back(clash);

  Constraint implies;
  implies.lhs.add("bi_gala", 1);
  implies.sense = Sense::kLe;
  implies.rhs.add("bi_concert", 1);
  implies.ctype = ConstraintTag::typed(10);
  implies.source = ConstraintSource::from_paragraph(2);
  model.constraints.push_back(implies);

  Constraint cover;
  cover.lhs.add("bi_fair", 1).add("bi_concert", 1);
  cover.sense = Sense::kGe;
  cover.rhs.constant = 1;
  cover.ctype = ConstraintTag::typed(12);
  cover.source = ConstraintSource::from_paragraph(3);
  model.constraints.push_back(cover);

  Constraint budget;
  budget.lhs.add("bi_gala", 1).add("bi_fair", 1).add("bi_concert", 1);
  budget.sense = Sense::kLe;
  budget.rhs.constant = 2;
  budget.ctype = ConstraintTag::typed(2);
  budget.source = ConstraintSource::from_paragraph(4);
  model.constraints.push_back(budget);

  instance.ground_truth = model;
  return instance;
}

ProblemInstance crate_instance() {
  ProblemInstance instance;
  instance.id = "crate_shipping";
  instance.paragraphs = {
      "Each crate shipped earns 30 dollars while each van hired costs 5 "
      "dollars. How many crates and vans maximize the net profit?",
      "At most 40 crates can be shipped.",
      "If any crates are shipped, then a van must be hired.",
  };

  MilpModel model;
  model.variables = {
      Variable{"crates", VariableKind::kInteger, "", 40.0},
      Variable{"vans", VariableKind::kInteger, "", {}},
      Variable{"bi_crates", VariableKind::kBinary, "crates", {}},
      Variable{"bi_vans", VariableKind::kBinary, "vans", {}},
  };
  Objective objective;
  objective.direction = Direction::kMaximize;
  objective.expr.add("crates", 30).add("vans", -5);
  model.objective = objective;

  Constraint cap;
  cap.lhs.add("crates", 1);
  cap.sense = Sense::kLe;
  cap.rhs.constant = 40;
  cap.ctype = ConstraintTag::typed(1);
  cap.source = ConstraintSource::from_paragraph(1);
  model.constraints.push_back(cap);

  Constraint implies;
  implies.lhs.add("bi_crates", 1);
  implies.sense = Sense::kLe;
  implies.rhs.add("bi_vans", 1);
  implies.ctype = ConstraintTag::typed(10);
  implies.source = ConstraintSource::from_paragraph(2);
  model.constraints.push_back(implies);

  supplement_linking(model);
  instance.ground_truth = model;
  instance.sufficient_big_m = 40.0;
  return instance;
}

std::string data_dir() { return NL2MILP_DATA_DIR; }
std::string golden_dir() { return NL2MILP_GOLDEN_DIR; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace nl2milp::testing
