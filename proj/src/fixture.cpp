#include <stdexcept>

#include "qtrend/record.hpp"

namespace qtrend {

namespace {

QuarterlyRecord row(int year, int quarter, double net_sales, double cost_of_sales,
                    double gross_profit, double net_income, double eps, double wafer_shipment,
                    double income_from_operations, double operating_expenses, double score,
                    std::vector<std::string> events) {
  QuarterlyRecord r;
  r.period = {year, quarter};
  r.financials = {net_sales,      cost_of_sales,  gross_profit,           net_income,
                  eps,            wafer_shipment, income_from_operations, operating_expenses};
  r.base_sentiment = score;
  r.effective_sentiment = score;  // stored scores are the post-intervention channel
  r.events = std::move(events);
  return r;
}

}  // namespace

const std::vector<QuarterlyRecord>& sample_quarters_1998_2003() {
  static const std::vector<QuarterlyRecord> fixture = {
      row(1998, 1, 15736.0, 7505.0, 8231.0, 6947.0, 1.7, 350500.0, 6709.0, 1522.0, 81.17,
          {"0.25um Process"}),
      row(1998, 2, 11601.0, 6304.0, 5296.0, 3753.0, 0.62, 276600.0, 3773.0, 1466.0, 67.07,
          {"0.25um Process"}),
      row(1998, 3, 11263.0, 7144.0, 4119.0, 2115.0, 0.35, 263400.0, 2827.0, 1292.0, 67.07,
          {"0.25um Process"}),
      row(1998, 4, 11633.0, 8010.0, 3933.0, 2524.0, 0.42, 286200.0, 2893.0, 1040.0, 66.96,
          {"0.25um Process"}),
      row(1999, 1, 12501.0, 6302.0, 6199.0, 4090.0, 0.68, 319600.0, 4873.0, 1326.0, 55.34,
          {"0.18um Process"}),
      row(1999, 2, 17232.0, 9696.0, 7536.0, 6022.0, 0.8, 422000.0, 6193.0, 1343.0, 55.07,
          {"0.18um Process"}),
      row(1999, 3, 19707.0, 10939.0, 8768.0, 6137.0, 0.81, 465000.0, 7169.0, 1599.0, 55.07,
          {"0.18um Process"}),
      row(1999, 4, 23691.0, 13797.0, 9712.0, 8311.0, 1.08, 551000.0, 7681.0, 2032.0, 45.66,
          {"Internet Bubble", "0.18um Process"}),
      row(2000, 1, 28278.0, 15573.0, 12705.0, 10091.0, 1.32, 642000.0, 10297.0, 2408.0, 44.75,
          {"Internet Bubble", "0.18um Process"}),
      row(2000, 2, 31812.0, 18062.0, 13749.0, 13349.0, 1.33, 697000.0, 11490.0, 2259.0, 43.76,
          {"Internet Bubble", "0.18um Process"}),
      row(2000, 3, 47491.0, 25146.0, 22345.0, 20058.0, 1.74, 942000.0, 18615.0, 3730.0, 43.76,
          {"Internet Bubble", "0.18um Process"}),
      row(2000, 4, 53822.0, 29066.0, 24656.0, 21473.0, 1.84, 1001000.0, 21160.0, 3596.0, 55.43,
          {"Internet Bubble", "9/11 Investigation", "0.13um Process"}),
      row(2001, 1, 39521.0, 26043.0, 11089.0, 8420.0, 0.71, 702000.0, 9257.0, 4221.0, 55.43,
          {"Internet Bubble", "9/11 Investigation", "0.13um Process"}),
      row(2001, 2, 26298.0, 21299.0, 4999.0, 312.0, 0.01, 450000.0, 284.0, 4714.0, 51.05,
          {"Internet Bubble", "9/11 Investigation", "0.13um Process"}),
      row(2001, 3, 26940.0, 20124.0, 6816.0, 1237.0, 0.06, 448000.0, 1942.0, 4874.0, 51.05,
          {"Internet Bubble", "9/11 Investigation", "0.13um Process"}),
      row(2001, 4, 33130.0, 22041.0, 11089.0, 4514.0, 0.26, 558000.0, 5859.0, 5230.0, 53.83, {}),
      row(2002, 1, 35790.0, 23763.0, 12027.0, 6588.0, 0.35, 599000.0, 8182.0, 3845.0, 54.92, {}),
      row(2002, 2, 44182.0, 27759.0, 16423.0, 9310.0, 0.49, 719000.0, 11980.0, 4448.0, 49.49, {}),
      row(2002, 3, 39835.0, 27000.0, 12835.0, 3160.0, 0.16, 677000.0, 8300.0, 4470.0, 49.49, {}),
      row(2002, 4, 41154.0, 30272.0, 10682.0, 2553.0, 0.13, 682000.0, 5651.0, 5031.0, 60.06,
          {"SARS Outbreak", "90nm Process"}),
      row(2003, 1, 39325.0, 28939.0, 10368.0, 4385.0, 0.23, 690000.0, 6195.0, 4191.0, 58.87,
          {"SARS Outbreak", "90nm Process"}),
      row(2003, 2, 49922.0, 31571.0, 18351.0, 11730.0, 0.58, 887000.0, 13340.0, 5011.0, 60.64,
          {"SARS Outbreak", "90nm Process"}),
      row(2003, 3, 54877.0, 33430.0, 21447.0, 15169.0, 0.75, 992000.0, 16487.0, 4960.0, 60.64,
          {"SARS Outbreak", "90nm Process"}),
      row(2003, 4, 57780.0, 35072.0, 22707.0, 16002.0, 0.79, 1427000.0, 16625.0, 6082.0, 65.69,
          {"90nm Process"}),
  };
  return fixture;
}

const std::vector<QuarterlyRecord>& fixture_by_name(const std::string& name) {
  if (name == "table2") return sample_quarters_1998_2003();
  throw std::runtime_error("unknown fixture '" + name + "' (available: table2)");
}

}  // namespace qtrend
