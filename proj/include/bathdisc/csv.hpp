#ifndef BATHDISC_CSV_HPP
#define BATHDISC_CSV_HPP

#include <string>
#include <vector>

namespace bathdisc {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// Strict double parse of a whole field.
double parse_double(const std::string& s);

// Minimal CSV table: mandatory header row, '\n' line endings, no quoting
// (fields never contain commas).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
    static CsvTable from_string(const std::string& text);
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace bathdisc

#endif
