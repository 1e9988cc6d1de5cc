#ifndef VIBCOOL_CSV_HPP
#define VIBCOOL_CSV_HPP

#include <fstream>
#include <string>
#include <vector>

namespace vibcool {

// Shortest round-trip-exact decimal form of a double (17 significant digits).
std::string format_full(double v);

// Tiny writer for the CSV artifacts: '#' comment lines first, then a header
// row, then data rows. All numbers are written round-trip exact so repeated
// runs produce byte-identical files.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();

  void comment(const std::string& text);
  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  void raw_row(const std::vector<std::string>& cells);
  void close();

 private:
  std::ofstream out_;
  std::string path_;
};

}  // namespace vibcool

#endif
