#include "rodtree/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "rodtree/error.hpp"

namespace rodtree {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::int64_t parse_int(const std::string& cell, const std::string& where) {
    std::int64_t value = 0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw ParseError(where + ": not an integer: '" + cell + "'");
    return value;
}

} // namespace

Dataset load_csv(std::istream& in, const FeatureSchema& schema, const std::string& source_name) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(source_name + ": empty file, expected a header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = split_line(line);
    const std::vector<std::string> expected = schema.codes();
    const std::size_t m = schema.size();

    if (header.size() != m + 1 || header.back() != "label") {
        // Name the first column that deviates from the expected header.
        for (std::size_t i = 0; i < header.size() && i < m; ++i)
            if (header[i] != expected[i])
                throw SchemaError(source_name + ": header column " + std::to_string(i + 1) +
                                  " is '" + header[i] + "', expected '" + expected[i] + "'");
        if (header.size() < m + 1) {
            const std::string missing =
                header.size() < m ? expected[header.size()] : std::string("label");
            throw SchemaError(source_name + ": missing column '" + missing + "'");
        }
        if (header.size() > m + 1)
            throw SchemaError(source_name + ": unexpected extra column '" + header[m] + "'");
        throw SchemaError(source_name + ": last column is '" + header.back() +
                          "', expected 'label'");
    }
    for (std::size_t i = 0; i < m; ++i)
        if (header[i] != expected[i])
            throw SchemaError(source_name + ": header column " + std::to_string(i + 1) +
                              " is '" + header[i] + "', expected '" + expected[i] + "'");

    std::vector<Record> records;
    std::size_t line_no = 1; // header was line 1
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue; // tolerate a trailing blank line

        const std::vector<std::string> cells = split_line(line);
        const std::string where = source_name + " line " + std::to_string(line_no);
        if (cells.size() != m + 1)
            throw ParseError(where + ": expected " + std::to_string(m + 1) + " cells, got " +
                             std::to_string(cells.size()));

        Record rec;
        rec.values.reserve(m);
        for (std::size_t f = 0; f < m; ++f) {
            const FeatureSpec& spec = schema.at(f);
            const std::int64_t value = parse_int(cells[f], where + ", feature " + spec.code);
            if (!spec.range.contains(value))
                throw ParseError(where + ", feature " + spec.code + ": value " +
                                 std::to_string(value) + " outside [" +
                                 std::to_string(spec.range.min) + ", " +
                                 std::to_string(spec.range.max) + "]");
            rec.values.push_back(value);
        }
        const std::int64_t label = parse_int(cells[m], where + ", column label");
        if (label != 0 && label != 1)
            throw ParseError(where + ", column label: must be 0 or 1, got " +
                             std::to_string(label));
        rec.label = static_cast<int>(label);
        records.push_back(std::move(rec));
    }

    return Dataset(schema, std::move(records), "csv:" + source_name);
}

Dataset load_csv(const std::string& path, const FeatureSchema& schema) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open for reading: " + path);
    return load_csv(in, schema, path);
}

void save_csv(const Dataset& data, std::ostream& out) {
    if (!data.fully_labeled())
        throw InvalidArgument("save_csv: dataset has unlabeled records");

    const auto codes = data.schema().codes();
    for (std::size_t i = 0; i < codes.size(); ++i)
        out << codes[i] << ',';
    out << "label\n";

    for (const Record& rec : data.records()) {
        for (const std::int64_t v : rec.values)
            out << v << ',';
        out << *rec.label << '\n';
    }
}

void save_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    save_csv(data, out);
    out.flush();
    if (!out)
        throw IoError("write failed: " + path);
}

} // namespace rodtree
