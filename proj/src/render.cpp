#include "pkb/render.hpp"

#include <algorithm>
#include <map>

#include "pkb/errors.hpp"

namespace pkb {

std::string render_alignment(const MultiAlignment& a, const KnowledgeStore& store,
                             const NewPattern& np) {
    auto order = column_order(a, store, np);
    if (!order) throw ValidationError("cannot render an invalid alignment");
    std::vector<int> col_rank(a.columns.size());
    for (std::size_t i = 0; i < order->size(); ++i) {
        col_rank[static_cast<size_t>((*order)[i])] = static_cast<int>(i);
    }
    std::vector<int> row_order = report_row_order(a, store, np);
    std::vector<int> line_of(a.rows.size());
    for (std::size_t i = 0; i < row_order.size(); ++i) {
        line_of[static_cast<size_t>(row_order[i])] = static_cast<int>(i);
    }

    // Lay slots left to right: each column at an even band 2k, each free
    // occurrence just before its row's next column (band 2k-1), ordered by
    // line and position inside a band.
    struct Cell {
        long band;
        int line;
        int pos;
        int col;  // column index or -1
        int row;
    };
    std::vector<Cell> cells;
    std::vector<std::vector<int>> col_at(a.rows.size());
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        col_at[r].assign(row_length(a, store, np, static_cast<int>(r)), -1);
    }
    for (std::size_t c = 0; c < a.columns.size(); ++c) {
        const Column& col = a.columns[c];
        col_at[static_cast<size_t>(col.first.row)][static_cast<size_t>(col.first.pos)] =
            static_cast<int>(c);
        col_at[static_cast<size_t>(col.second.row)][static_cast<size_t>(col.second.pos)] =
            static_cast<int>(c);
        cells.push_back({2L * col_rank[c], 0, 0, static_cast<int>(c), -1});
    }
    const long tail_band = 2L * static_cast<long>(a.columns.size());
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        long next = tail_band;  // band of the row's next column, scanned right to left
        for (int p = static_cast<int>(col_at[r].size()) - 1; p >= 0; --p) {
            if (col_at[r][static_cast<size_t>(p)] >= 0) {
                next = 2L * col_rank[static_cast<size_t>(col_at[r][static_cast<size_t>(p)])];
            } else {
                cells.push_back({next - 1, line_of[r], p, -1, static_cast<int>(r)});
            }
        }
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) {
        if (x.band != y.band) return x.band < y.band;
        if (x.line != y.line) return x.line < y.line;
        return x.pos < y.pos;
    });

    auto name_at = [&](int row, int pos) -> std::string {
        if (a.rows[static_cast<size_t>(row)].is_new) return np.occs[static_cast<size_t>(pos)].name;
        return store.symbols().name(
            store.pattern(a.rows[static_cast<size_t>(row)].pattern).occs[static_cast<size_t>(pos)].sym);
    };

    std::vector<std::string> lines(a.rows.size());
    std::size_t x = 0;
    for (const Cell& cell : cells) {
        std::size_t width = 0;
        auto place = [&](int row, int pos) {
            std::string nm = name_at(row, pos);
            width = std::max(width, nm.size());
            std::string& line = lines[static_cast<size_t>(line_of[static_cast<size_t>(row)])];
            line.resize(x, ' ');
            line += nm;
        };
        if (cell.col >= 0) {
            place(a.columns[static_cast<size_t>(cell.col)].first.row,
                  a.columns[static_cast<size_t>(cell.col)].first.pos);
            place(a.columns[static_cast<size_t>(cell.col)].second.row,
                  a.columns[static_cast<size_t>(cell.col)].second.pos);
        } else {
            place(cell.row, cell.pos);
        }
        x += width + 1;
    }
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        // Trim trailing spaces per line.
        std::string& line = lines[i];
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line;
        out += '\n';
    }
    return out;
}

}  // namespace pkb
