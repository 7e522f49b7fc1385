#pragma once

#include <string>
#include <vector>

namespace qfano {

struct RowReport {
    int line_no = 0;
    std::string label;
    bool pass = true;
    std::vector<std::string> diffs;
};

struct TableReport {
    std::string table_id;
    std::vector<RowReport> rows;
    std::vector<std::string> unexpected;  // records found by the search but absent from the table

    bool pass() const;
    std::size_t passed() const;
};

const std::vector<std::string>& table_ids();

// Golden comparison of the shipped table transcription against computed values.
TableReport verify_table(const std::string& table_id, unsigned workers = 1);

}  // namespace qfano
