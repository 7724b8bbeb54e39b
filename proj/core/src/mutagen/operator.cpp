#include "muse/mutagen/operator.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace muse::mutagen {

const char* goalName(OperatorGoal goal) {
  return goal == OperatorGoal::DataLeak ? "dataLeak" : "cryptoMisuse";
}

const std::vector<std::string>& knownSourceApis() {
  static const std::vector<std::string> apis = {"timezone", "deviceId", "location"};
  return apis;
}

const std::vector<std::string>& knownCryptoApis() {
  static const std::vector<std::string> apis = {"getCipher", "getDigest"};
  return apis;
}

std::string sourceApiValue(const std::string& api) {
  if (api == "timezone") return "Eastern Standard Time";
  if (api == "deviceId") return "867530900000009";
  if (api == "location") return "37.4220,-122.0841";
  return "";
}

bool isKnownSourceApi(const std::string& api) {
  const auto& apis = knownSourceApis();
  return std::find(apis.begin(), apis.end(), api) != apis.end();
}

bool isKnownCryptoApi(const std::string& api) {
  const auto& apis = knownCryptoApis();
  return std::find(apis.begin(), apis.end(), api) != apis.end();
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

SecurityOperator loadOperator(const std::string& line, const std::string& fallbackId) {
  SecurityOperator op;
  op.id = fallbackId;
  bool haveGoal = false, haveSource = false, haveSink = false;

  std::stringstream ss(line);
  std::string part;
  while (std::getline(ss, part, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    size_t eq = part.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("operator spec entry is not key=value: '" + part + "'");
    std::string key = trim(part.substr(0, eq));
    std::string value = trim(part.substr(eq + 1));
    if (key == "goal") {
      if (value == "dataLeak")
        op.goal = OperatorGoal::DataLeak;
      else if (value == "cryptoMisuse")
        op.goal = OperatorGoal::CryptoMisuse;
      else
        throw std::runtime_error("unknown operator goal '" + value + "'");
      haveGoal = true;
    } else if (key == "source") {
      op.sourceApi = value;
      haveSource = true;
    } else if (key == "sink") {
      op.sinkApi = value;
      haveSink = true;
    } else if (key == "path") {
      op.pathRule = value;
    } else if (key == "id") {
      op.id = value;
    } else {
      throw std::runtime_error("unknown operator spec key '" + key + "'");
    }
  }
  if (!haveGoal || !haveSource || !haveSink)
    throw std::runtime_error("operator spec must name goal, source and sink");

  if (op.goal == OperatorGoal::DataLeak) {
    if (!isKnownSourceApi(op.sourceApi))
      throw std::runtime_error("unknown source API '" + op.sourceApi + "'");
    if (op.sinkApi != "log")
      throw std::runtime_error("data-leak operators sink through 'log', got '" +
                               op.sinkApi + "'");
  } else {
    if (!isKnownCryptoApi(op.sinkApi))
      throw std::runtime_error("unknown crypto API '" + op.sinkApi + "'");
    if (op.sourceApi.empty())
      throw std::runtime_error("crypto operators need a parameter literal as source");
  }
  if (!op.pathRule.empty() && op.pathRule != "charRebuild")
    throw std::runtime_error("unknown path rule '" + op.pathRule + "'");
  return op;
}

std::vector<SecurityOperator> loadOperatorFile(const std::string& text) {
  std::vector<SecurityOperator> out;
  std::stringstream ss(text);
  std::string line;
  int n = 0;
  while (std::getline(ss, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.push_back(loadOperator(t, "op" + std::to_string(n)));
    ++n;
  }
  if (out.empty()) throw std::runtime_error("operator spec file defines no operators");
  return out;
}

SecurityOperator defaultDataLeakOperator() {
  SecurityOperator op;
  op.id = "op0";
  op.goal = OperatorGoal::DataLeak;
  op.sourceApi = "timezone";
  op.sinkApi = "log";
  return op;
}

}  // namespace muse::mutagen
