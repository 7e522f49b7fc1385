#pragma once

#include "qfano/search.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qfano {

inline constexpr int kRecordSchema = 1;

// Records are sorted canonically before writing; keys are sorted.
std::string records_to_json(std::vector<CandidateRecord> records);
std::vector<CandidateRecord> records_from_json(std::string_view text);

// Header: q,basket,l,k,n,A3,minusKc2,genus,cover_basket,cover_A3,cover_genus,dim_<t>A_<s>Xi...
std::string records_to_csv(std::vector<CandidateRecord> records);
std::vector<CandidateRecord> records_from_csv(std::string_view text);

std::string sha256_hex(std::string_view data);

}  // namespace qfano
