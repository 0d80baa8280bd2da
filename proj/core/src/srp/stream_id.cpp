#include "tssdn/srp/stream_id.hpp"

#include <stdexcept>

namespace tssdn::srp {

std::string StreamId::to_string() const { return talker.to_string() + "/" + std::to_string(unique_id); }

SrClass class_a() { return SrClass{SrClassName::ClassA, 6, sim::SimTime::us(250), sim::SimTime::us(125)}; }

SrClass class_b() { return SrClass{SrClassName::ClassB, 5, sim::SimTime::us(500), sim::SimTime::us(250)}; }

SrClass sr_class(SrClassName name) { return name == SrClassName::ClassA ? class_a() : class_b(); }

SrClassName parse_sr_class(std::string_view text) {
  if (text == "A" || text == "ClassA" || text == "a") return SrClassName::ClassA;
  if (text == "B" || text == "ClassB" || text == "b") return SrClassName::ClassB;
  throw std::invalid_argument("unknown SR class '" + std::string(text) + "'");
}

const char* to_string(SrClassName name) { return name == SrClassName::ClassA ? "A" : "B"; }

}  // namespace tssdn::srp
