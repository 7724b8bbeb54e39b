#pragma once

#include <string>
#include <vector>

namespace muse::mutagen {

enum class OperatorGoal { DataLeak, CryptoMisuse };

const char* goalName(OperatorGoal goal);

/// Declarative description of one unwanted behavior. For data leaks the
/// source is an AppLang source API and the sink is the log call; for crypto
/// misuse the source is the weak parameter literal and the sink is the
/// crypto API call itself.
struct SecurityOperator {
  std::string id;
  OperatorGoal goal = OperatorGoal::DataLeak;
  std::string sourceApi;
  std::string sinkApi;
  std::string pathRule;  // transformation chain id; empty or "charRebuild"
};

/// Source APIs the interpreter and detectors recognize.
const std::vector<std::string>& knownSourceApis();
/// Crypto APIs usable as misuse sinks.
const std::vector<std::string>& knownCryptoApis();
/// Deterministic runtime value returned by a source API.
std::string sourceApiValue(const std::string& api);

bool isKnownSourceApi(const std::string& api);
bool isKnownCryptoApi(const std::string& api);

/// Parses one operator line: `goal=...; source=...; sink=...; path=...`.
/// Throws std::runtime_error on unknown APIs or goal/API mismatches.
SecurityOperator loadOperator(const std::string& line, const std::string& fallbackId = "op0");

/// Parses a whole operator spec file, one operator per non-comment line.
std::vector<SecurityOperator> loadOperatorFile(const std::string& text);

/// The built-in data-leak operator: timezone source into the log sink.
SecurityOperator defaultDataLeakOperator();

}  // namespace muse::mutagen
