#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mcc::csv {

using Record = std::vector<std::string>;

// Parses RFC 4180 text: comma separated, double-quote quoting with "" escapes,
// CRLF or LF line endings. A trailing newline does not produce an empty record.
// Throws InputError on an unterminated quote.
std::vector<Record> parse(std::istream& in);
std::vector<Record> parse_file(const std::string& path);

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape(const std::string& field);
void write_record(std::ostream& out, const Record& record);

}  // namespace mcc::csv
