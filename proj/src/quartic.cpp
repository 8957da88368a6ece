#include "hvrep/quartic.hpp"

#include <algorithm>
#include <cstring>

#include "hvrep/errors.hpp"

namespace hvrep {

namespace {

// Rows = b2 label, columns = a2 label, both ordered
// 000,100,010,110,001,101,011,111: label bit k contributes 2^k to the index.
// Cells of length 4 are partitions (the half containing 1), cells of length
// 2 are bitangent index pairs, "" is the base-class marker. The cell
// (a2=010, b2=100) is 1258; see the lookup contract for why.
constexpr const char* kCayleyTable[8][8] = {
    {"", "1238", "1267", "1245", "1468", "1578", "1356", "1347"},
    {"1234", "48", "1258", "35", "1457", "16", "1378", "27"},
    {"1256", "1247", "57", "46", "1367", "1345", "23", "18"},
    {"1278", "37", "68", "1236", "1358", "25", "14", "1567"},
    {"1357", "1346", "1478", "1568", "12", "38", "67", "45"},
    {"1368", "26", "1456", "17", "34", "1248", "58", "1235"},
    {"1458", "1678", "13", "28", "56", "47", "1257", "1246"},
    {"1467", "15", "24", "1348", "78", "1237", "1268", "36"},
};

int label_index(const std::vector<int>& bits) {
  int idx = 0;
  for (std::size_t k = 0; k < bits.size(); ++k)
    if (bits[k]) idx |= 1 << k;
  return idx;
}

}  // namespace

Partition8 Partition8::make(std::array<int, 4> idx) {
  std::sort(idx.begin(), idx.end());
  if (idx[0] != 1)
    throw ValidationError("partition half must contain the index 1");
  for (int i = 0; i < 4; ++i) {
    if (idx[i] < 1 || idx[i] > 8)
      throw ValidationError("partition indices must lie in 1..8");
    if (i > 0 && idx[i] == idx[i - 1])
      throw ValidationError("partition indices must be distinct");
  }
  return Partition8{idx};
}

std::array<int, 4> Partition8::complement() const {
  std::array<int, 4> out{};
  int n = 0;
  for (int v = 1; v <= 8; ++v)
    if (std::find(I.begin(), I.end(), v) == I.end()) out[n++] = v;
  return out;
}

std::string Partition8::str() const {
  std::string s;
  for (int v : I) s += static_cast<char>('0' + v);
  return s;
}

std::string CayleyCell::str() const {
  switch (kind) {
    case Kind::empty:
      return "";
    case Kind::partition:
      return partition.str();
    case Kind::pair:
      return {static_cast<char>('0' + pair[0]),
              static_cast<char>('0' + pair[1])};
  }
  return "";
}

CayleyCell cayley_lookup(const ThetaCharacteristic& ch) {
  if (ch.a2.size() != 3 || ch.b2.size() != 3)
    throw ValidationError("table lookup expects genus-3 labels");
  const char* cell = kCayleyTable[label_index(ch.b2)][label_index(ch.a2)];
  const std::size_t len = std::strlen(cell);
  CayleyCell out;
  if (len == 0) {
    out.kind = CayleyCell::Kind::empty;
  } else if (len == 2) {
    out.kind = CayleyCell::Kind::pair;
    out.pair = {cell[0] - '0', cell[1] - '0'};
  } else {
    out.kind = CayleyCell::Kind::partition;
    out.partition = Partition8::make(
        {cell[0] - '0', cell[1] - '0', cell[2] - '0', cell[3] - '0'});
  }
  return out;
}

std::vector<Partition8> real_partitions(const std::array<int, 8>& pi) {
  for (int i = 1; i <= 8; ++i) {
    const int img = pi[i - 1];
    if (img < 1 || img > 8)
      throw ValidationError("permutation images must lie in 1..8");
    if (img == i)
      throw ValidationError(
          "permutation must be fixed-point free (four disjoint 2-cycles)");
    if (pi[img - 1] != i)
      throw ValidationError(
          "permutation must be an involution (four disjoint 2-cycles)");
  }

  std::vector<Partition8> out;
  // All 4-subsets of {1..8} containing 1: choose the other three indices.
  for (int a = 2; a <= 8; ++a)
    for (int b = a + 1; b <= 8; ++b)
      for (int c = b + 1; c <= 8; ++c) {
        const Partition8 part = Partition8::make({1, a, b, c});
        std::array<int, 4> img{};
        for (int i = 0; i < 4; ++i) img[i] = pi[part.I[i] - 1];
        std::sort(img.begin(), img.end());
        if (img == part.I || img == part.complement()) out.push_back(part);
      }
  return out;
}

BitangentSet bitangents_from_periods(const CurvePeriodData& data) {
  if (data.omega.g != 3)
    throw ValidationError("bitangent enumeration expects genus-3 period data");
  if (data.omega1.size() != 3)
    throw ValidationError("bitangent enumeration needs the omega1 block");

  PolyMatrix<Complex> grid(
      8, std::vector<HomogeneousPoly<Complex>>(8, HomogeneousPoly<Complex>(1)));
  BitangentSet set;
  for (const ThetaCharacteristic& ch : enumerate_chars(3)) {
    if (ch.parity() != 1) continue;
    LabeledBitangent lb;
    lb.eps = ch;
    const CayleyCell cell = cayley_lookup(ch);
    lb.pair = cell.pair;  // odd cells always carry a pair label
    lb.line = bitangent_from_char(ch, data);
    grid[lb.pair[0] - 1][lb.pair[1] - 1] = lb.line;
    grid[lb.pair[1] - 1][lb.pair[0] - 1] = lb.line;
    set.lines.push_back(std::move(lb));
  }
  set.matrix = BitangentMatrix<Complex>::make(std::move(grid));
  return set;
}

}  // namespace hvrep
