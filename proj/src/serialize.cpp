#include "qfano/serialize.hpp"

#include "qfano/error.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace qfano {

using nlohmann::json;

namespace {

json basket_json(const Basket& b) {
    json arr = json::array();
    for (auto& p : b.points()) arr.push_back({{"r", p.r}, {"b", p.b}});
    return arr;
}

Basket basket_from(const json& arr) {
    std::vector<BasketPoint> pts;
    for (auto& p : arr) pts.emplace_back(p.at("r").get<long>(), p.at("b").get<long>());
    return Basket(std::move(pts));
}

json record_json(const CandidateRecord& rec) {
    json j;
    j["schema"] = kRecordSchema;
    j["q"] = rec.q;
    j["basket"] = basket_json(rec.basket);
    j["l"] = rec.l;
    j["n"] = rec.torsion ? rec.torsion->n : 1;
    j["A3"] = rec.a3.str();
    j["minusKc2"] = rec.minus_kc2.str();
    j["genus"] = rec.genus;
    j["dims"] = rec.dims;
    if (rec.torsion) {
        j["k"] = rec.torsion->k;
        if (rec.torsion->cover)
            j["cover"] = {{"basket", basket_json(*rec.torsion->cover)},
                          {"A3", rec.torsion->cover_a3.str()},
                          {"genus", rec.torsion->cover_genus}};
    }
    return j;
}

CandidateRecord record_from(const json& j) {
    if (j.at("schema").get<int>() != kRecordSchema)
        throw Error(ErrorCode::InvalidInput, "unsupported record schema " + j.at("schema").dump());
    CandidateRecord rec;
    rec.q = j.at("q").get<long>();
    rec.basket = basket_from(j.at("basket"));
    rec.l = j.at("l").get<std::vector<long>>();
    rec.a3 = Rational::parse(j.at("A3").get<std::string>());
    rec.minus_kc2 = Rational::parse(j.at("minusKc2").get<std::string>());
    rec.genus = j.at("genus").get<long>();
    rec.dims = j.at("dims").get<std::vector<std::vector<long>>>();
    if (j.contains("k")) {
        TorsionData t;
        t.n = j.at("n").get<long>();
        t.k = j.at("k").get<std::vector<long>>();
        if (j.contains("cover")) {
            auto& c = j.at("cover");
            t.cover = basket_from(c.at("basket"));
            t.cover_a3 = Rational::parse(c.at("A3").get<std::string>());
            t.cover_genus = c.at("genus").get<long>();
        }
        rec.torsion = std::move(t);
    }
    return rec;
}

std::string join(const std::vector<long>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::vector<long> split_longs(const std::string& s) {
    std::vector<long> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stol(item));
    return out;
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::vector<std::string>> csv_rows(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') cell += '"', ++i;
            else if (c == '"') quoted = false;
            else cell += c;
            continue;
        }
        if (c == '"') quoted = any = true;
        else if (c == ',') row.push_back(std::move(cell)), cell.clear(), any = true;
        else if (c == '\n') {
            if (any || !cell.empty()) row.push_back(std::move(cell));
            if (!row.empty()) rows.push_back(std::move(row));
            row.clear(), cell.clear(), any = false;
        } else if (c != '\r') cell += c, any = true;
    }
    if (quoted) throw Error(ErrorCode::InvalidInput, "unterminated quote in CSV");
    if (any || !cell.empty()) row.push_back(std::move(cell));
    if (!row.empty()) rows.push_back(std::move(row));
    return rows;
}

const std::vector<std::string> kFixedColumns = {"q",      "basket",       "l",        "k",
                                                "n",      "A3",           "minusKc2", "genus",
                                                "cover_basket", "cover_A3", "cover_genus"};

std::string dim_header(long t, long s) { return "dim_" + std::to_string(t) + "A_" + std::to_string(s) + "Xi"; }

}  // namespace

std::string records_to_json(std::vector<CandidateRecord> records) {
    std::stable_sort(records.begin(), records.end(), record_less);
    json arr = json::array();
    for (auto& r : records) arr.push_back(record_json(r));
    return arr.dump(2) + "\n";
}

std::vector<CandidateRecord> records_from_json(std::string_view text) {
    json arr;
    try {
        arr = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidInput, std::string("bad JSON: ") + e.what());
    }
    if (!arr.is_array()) throw Error(ErrorCode::InvalidInput, "expected a JSON array of records");
    std::vector<CandidateRecord> out;
    try {
        for (auto& j : arr) out.push_back(record_from(j));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidInput, std::string("bad record: ") + e.what());
    }
    return out;
}

std::string records_to_csv(std::vector<CandidateRecord> records) {
    std::stable_sort(records.begin(), records.end(), record_less);
    std::size_t rows = 1, cols = 0;
    for (auto& r : records) {
        rows = std::max(rows, r.dims.size());
        for (auto& d : r.dims) cols = std::max(cols, d.size());
    }
    std::string out;
    for (std::size_t i = 0; i < kFixedColumns.size(); ++i) out += (i ? "," : "") + kFixedColumns[i];
    for (std::size_t s = 0; s < rows; ++s)
        for (std::size_t t = 1; t <= cols; ++t) out += "," + dim_header(t, s);
    out += "\n";
    for (auto& r : records) {
        std::vector<std::string> cells = {std::to_string(r.q),
                                          r.basket.str(),
                                          join(r.l),
                                          r.torsion ? join(r.torsion->k) : "",
                                          std::to_string(r.torsion ? r.torsion->n : 1),
                                          r.a3.str(),
                                          r.minus_kc2.str(),
                                          std::to_string(r.genus),
                                          "", "", ""};
        if (r.torsion && r.torsion->cover) {
            cells[8] = r.torsion->cover->str();
            cells[9] = r.torsion->cover_a3.str();
            cells[10] = std::to_string(r.torsion->cover_genus);
        }
        for (std::size_t s = 0; s < rows; ++s)
            for (std::size_t t = 1; t <= cols; ++t)
                cells.push_back(s < r.dims.size() && t <= r.dims[s].size() ? std::to_string(r.dims[s][t - 1]) : "");
        for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_cell(cells[i]);
        out += "\n";
    }
    return out;
}

std::vector<CandidateRecord> records_from_csv(std::string_view text) {
    auto rows = csv_rows(text);
    if (rows.empty()) throw Error(ErrorCode::InvalidInput, "empty CSV");
    auto& header = rows[0];
    if (header.size() < kFixedColumns.size() ||
        !std::equal(kFixedColumns.begin(), kFixedColumns.end(), header.begin()))
        throw Error(ErrorCode::InvalidInput, "unexpected CSV header");
    // (s, t) of every dim column
    std::vector<std::pair<long, long>> pos;
    for (std::size_t i = kFixedColumns.size(); i < header.size(); ++i) {
        long t = 0, s = 0;
        char tail = 0;
        if (std::sscanf(header[i].c_str(), "dim_%ldA_%ldXi%c", &t, &s, &tail) != 2 || t < 1 || s < 0)
            throw Error(ErrorCode::InvalidInput, "bad dim column '" + header[i] + "'");
        pos.emplace_back(s, t);
    }
    std::vector<CandidateRecord> out;
    for (std::size_t ri = 1; ri < rows.size(); ++ri) {
        auto& c = rows[ri];
        if (c.size() != header.size())
            throw Error(ErrorCode::InvalidInput, "CSV row " + std::to_string(ri + 1) + " has the wrong width");
        try {
            CandidateRecord rec;
            rec.q = std::stol(c[0]);
            rec.basket = Basket::parse(c[1]);
            rec.l = split_longs(c[2]);
            rec.a3 = Rational::parse(c[5]);
            rec.minus_kc2 = Rational::parse(c[6]);
            rec.genus = std::stol(c[7]);
            if (!c[3].empty()) {
                TorsionData t;
                t.k = split_longs(c[3]);
                t.n = std::stol(c[4]);
                if (!c[8].empty()) {
                    t.cover = Basket::parse(c[8]);
                    t.cover_a3 = Rational::parse(c[9]);
                    t.cover_genus = std::stol(c[10]);
                }
                rec.torsion = std::move(t);
            }
            for (std::size_t i = 0; i < pos.size(); ++i) {
                auto& cell = c[kFixedColumns.size() + i];
                if (cell.empty()) continue;
                auto [s, t] = pos[i];
                if (rec.dims.size() <= std::size_t(s)) rec.dims.resize(s + 1);
                auto& row = rec.dims[s];
                if (row.size() != std::size_t(t - 1))
                    throw Error(ErrorCode::InvalidInput, "gap in dim columns");
                row.push_back(std::stol(cell));
            }
            out.push_back(std::move(rec));
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::InvalidInput, "bad number in CSV row " + std::to_string(ri + 1));
        }
    }
    return out;
}

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorCode::InvalidInput, "sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) out += hex[md[i] >> 4], out += hex[md[i] & 15];
    return out;
}

}  // namespace qfano
