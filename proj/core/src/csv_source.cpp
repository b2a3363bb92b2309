#include <algorithm>
#include <ostream>

#include "awe/streams.hpp"
#include "text.hpp"

namespace awe {

CsvSchema load_schema(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open schema file " + path.string());
    }
    CsvSchema schema;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view s = text::trim(raw);
        if (s.empty() || s.front() == '#') {
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("expected key=value", line);
        }
        const auto key = text::trim(s.substr(0, eq));
        const auto value = text::trim(s.substr(eq + 1));
        if (key == "header") {
            if (value != "true" && value != "false") {
                throw ParseError("header must be true or false", line);
            }
            schema.header = value == "true";
        } else if (key == "amount") {
            schema.amount_column = std::string(value);
        } else if (key == "classes") {
            for (auto name : text::split(value, ',')) {
                schema.classes.emplace_back(text::trim(name));
            }
        } else {
            throw ParseError("unknown schema key '" + std::string(key) + "'", line);
        }
    }
    return schema;
}

CsvSource::CsvSource(const std::filesystem::path& path, CsvSchema schema)
    : in_(path), schema_(std::move(schema)) {
    if (!in_) {
        throw IoError("cannot open " + path.string());
    }
    if (!schema_.classes.empty()) {
        labels_ = LabelMap(schema_.classes);
    }
    if (schema_.header) {
        std::string raw;
        if (std::getline(in_, raw)) {
            ++line_;
            const auto names = text::split(text::trim(raw), ',');
            n_columns_ = names.size();
            if (schema_.amount_column) {
                const auto it = std::find_if(names.begin(), names.end(), [&](std::string_view n) {
                    return text::trim(n) == *schema_.amount_column;
                });
                if (it == names.end()) {
                    throw ParseError("amount column '" + *schema_.amount_column + "' not in header", line_);
                }
                amount_index_ = static_cast<std::size_t>(it - names.begin());
            }
        }
    } else if (schema_.amount_column) {
        const auto idx = text::parse_uint(*schema_.amount_column);
        if (!idx) {
            throw ParseError("amount column must be a 0-based index when there is no header", 0);
        }
        amount_index_ = static_cast<std::size_t>(*idx);
    }
    if (amount_index_ && n_columns_ && *amount_index_ + 1 >= *n_columns_) {
        throw ParseError("amount column cannot be the label column", line_);
    }
}

std::optional<Instance> CsvSource::next() {
    std::string raw;
    while (std::getline(in_, raw)) {
        ++line_;
        const std::string_view row = text::trim(raw);
        if (row.empty()) {
            continue;
        }
        const auto cells = text::split(row, ',');
        if (!n_columns_) {
            n_columns_ = cells.size();
        }
        if (cells.size() != *n_columns_) {
            throw ParseError("expected " + std::to_string(*n_columns_) + " columns, found " +
                                 std::to_string(cells.size()),
                             line_);
        }
        if (cells.size() < 2 || (amount_index_ && cells.size() < 3)) {
            throw ParseError("row needs at least one feature and a label", line_);
        }
        if (amount_index_ && *amount_index_ + 1 >= cells.size()) {
            throw ParseError("amount column out of range", line_);
        }

        Instance inst;
        inst.features.reserve(cells.size() - 1);
        for (std::size_t k = 0; k + 1 < cells.size(); ++k) {
            const auto v = text::parse_double(cells[k]);
            if (!v) {
                throw ParseError("non-numeric value '" + std::string(text::trim(cells[k])) + "' in column " +
                                     std::to_string(k),
                                 line_);
            }
            if (amount_index_ && k == *amount_index_) {
                if (*v < 0.0) {
                    throw ParseError("negative transaction amount", line_);
                }
                inst.amount = *v;
            } else {
                inst.features.push_back(*v);
            }
        }
        const auto label = text::trim(cells.back());
        if (label.empty()) {
            throw ParseError("empty label", line_);
        }
        try {
            inst.label = labels_.intern(label);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_);
        }
        return inst;
    }
    if (in_.bad()) {
        throw IoError("read error at line " + std::to_string(line_));
    }
    return std::nullopt;
}

std::unique_ptr<CsvSource> open_csv(const std::filesystem::path& path, CsvSchema schema) {
    return std::make_unique<CsvSource>(path, std::move(schema));
}

std::size_t write_csv(InstanceSource& source, std::ostream& out, bool with_amount, std::size_t limit) {
    std::size_t rows = 0;
    std::string line;
    while (rows < limit) {
        auto inst = source.next();
        if (!inst) {
            break;
        }
        line.clear();
        for (double f : inst->features) {
            line += text::format_double(f);
            line += ',';
        }
        if (with_amount) {
            line += inst->amount ? text::format_double(*inst->amount) : std::string("0");
            line += ',';
        }
        line += inst->label ? source.labels().name(*inst->label) : std::string();
        line += '\n';
        out << line;
        ++rows;
    }
    if (!out) {
        throw IoError("write failed");
    }
    return rows;
}

}  // namespace awe
