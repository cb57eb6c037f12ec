#include <catch_amalgamated.hpp>
#include <clocale>
#include <filesystem>
#include <fstream>

#include "estail/dataset.hpp"
#include "estail/errors.hpp"

using namespace estail;

TEST_CASE("comments and blank lines are skipped", "[dataset]") {
  const auto d = parse_dataset("# header\n1.5\n\n  2e3  \r\n+4\n# tail\n-0.25\n");
  CHECK(d.values == std::vector<double>{1.5, 2000.0, 4.0, -0.25});
  CHECK(d.skipped_lines == 3);
}

TEST_CASE("every bad line is reported", "[dataset]") {
  try {
    parse_dataset("1\nabc\n2\nnan\n3,5\ninf\n");
    FAIL("expected IngestionError");
  } catch (const IngestionError& e) {
    CHECK(e.lines() == std::vector<std::size_t>{2, 4, 5, 6});
    CHECK(std::string(e.what()).find("<memory>") != std::string::npos);
  }
}

TEST_CASE("a file with no values parses to nothing", "[dataset]") {
  const auto d = parse_dataset("# nothing\n\n");
  CHECK(d.values.empty());
  CHECK(d.skipped_lines == 2);
}

TEST_CASE("decimal point ignores the locale", "[dataset]") {
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") == nullptr) std::setlocale(LC_NUMERIC, "C");
  CHECK(parse_dataset("1.25\n").values.front() == 1.25);
  std::setlocale(LC_NUMERIC, "C");
}

TEST_CASE("reading from disk", "[dataset]") {
  const auto path = std::filesystem::temp_directory_path() / "estail_dataset_test.txt";
  {
    std::ofstream(path) << "# synthetic\n3\n1\n2\n";
  }
  const auto d = read_dataset(path);
  CHECK(d.values == std::vector<double>{3, 1, 2});
  CHECK(d.path == path.string());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_dataset(path), Error);
}

TEST_CASE("the message names the bad lines", "[dataset]") {
  CHECK_THROWS_WITH(parse_dataset("1\nx\n2\nnan\n"), Catch::Matchers::ContainsSubstring("2, 4"));
}
