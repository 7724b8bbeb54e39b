#pragma once

#include <string>
#include <vector>

#include "muse/applang/ast.hpp"
#include "muse/mutagen/mip.hpp"
#include "muse/mutagen/operator.hpp"

namespace muse::mutagen {

struct MutantRecord {
  std::string tag;
  SchemeKind scheme = SchemeKind::Reachability;
  std::string operatorId;
  PointKind pointKind = PointKind::MethodEntry;
  int mutantK = 0;  // operator instance number
  int sinkJ = -1;   // compound-tag sink index; -1 for single-sink mutants
  std::string sinkClass;   // qualified housing class of the sink
  std::string sinkMethod;  // housing method of the sink
  std::string sourceClass;
  std::string sourceMethod;  // empty when the source is a field initializer
  bool prioritized = false;
  std::string sourceUnit;
  int sourceLine = 0;
  std::string sinkUnit;
  int sinkLine = 0;
};

struct Ledger {
  std::string fingerprint;
  std::vector<MutantRecord> records;

  const MutantRecord* find(const std::string& tag) const;
  std::vector<std::string> tags() const;
};

struct SeedResult {
  applang::Program program;
  Ledger ledger;
  std::vector<std::string> dropNotes;  // skipped injections, one note each
};

/// Seeds one scheme worth of mutants into a copy of the program.
SeedResult applyScheme(const applang::Program& program, const MutationScheme& scheme,
                       const SecurityOperator& op);

/// Seeds all schemes (declared order) into a single program copy. The tag
/// namespace is partitioned per scheme: each scheme's mutants occupy a
/// contiguous K block.
SeedResult seedAll(const applang::Program& program,
                   const std::vector<MutationScheme>& schemes,
                   const SecurityOperator& op);

SeedResult seedAll(const applang::Program& program,
                   const std::vector<MutationScheme>& schemes,
                   const std::vector<SecurityOperator>& ops);

/// Tab-separated ledger: `tag scheme operator srcFile:srcLine sinkFile:sinkLine`
/// under a `# fingerprint=<hex>` header line.
std::string ledgerToTsv(const Ledger& ledger);
Ledger ledgerFromTsv(const std::string& text);

/// Restores housing information (sink/source class and method, point kind,
/// priority tag) for records loaded from disk, by walking the mutated AST.
void annotateLedger(const applang::Program& mutated, Ledger& ledger);

}  // namespace muse::mutagen
