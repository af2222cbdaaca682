#ifndef UNIDIVE_TESTS_TEST_UTIL_H_
#define UNIDIVE_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <string>
#include <vector>

#include "unidive/conllu.h"

namespace unidive::testing {

std::filesystem::path DataPath(const std::string& name);
std::string ReadFile(const std::filesystem::path& path);
std::vector<Sentence> ReadFixture(const std::string& name);

// Valid CoNLL-U fixtures (everything except invalid_* and malformed_*).
std::vector<std::filesystem::path> ValidConlluFixtures();

// `# expect = <token id> Key=Value` lines of a sentence.
struct Expectation {
  std::string sent_id;
  int token_id = 0;
  std::string key;
  std::string value;
};
std::vector<Expectation> Expectations(const Sentence& sentence);

// The 55 Key=Value rows of the Korean feature table, in table order.
const std::vector<std::string>& FeatureRows();

}  // namespace unidive::testing

#endif  // UNIDIVE_TESTS_TEST_UTIL_H_
