// Generated by tests/oracles/stats_oracle.py (scipy 1.15.3).
#pragma once

#include <vector>

namespace oracle {

struct StatsCase {
  std::vector<double> x, y;
  double welch_t, welch_dof, welch_p;
  double student_t, student_dof, student_p;
  double d, d_low, d_high;
};

inline const std::vector<StatsCase> kStatsCases = {
    {{1.0, 2.0, 3.0, 4.0, 5.0},
     {3.0, 4.0, 5.0, 6.0, 7.0},
     -2.0, 8.0, 0.08051623795726257,
     -2.0, 8.0, 0.08051623795726257,
     -1.2649110640673518, -2.650840355192985, 0.12101822705828136},
    {{12.294, 8.479, 12.559, 11.367, 10.572, 12.193, 8.162, 11.688, 10.561, 12.805, 12.87},
     {7.599, 7.585, 6.196, 7.962, 10.827, 12.218},
     2.3645942170982255, 7.906685923766185, 0.04598827935743404,
     2.6150820994207065, 15.0, 0.019504192413249723,
     1.3272044245163452, 0.22490440262369438, 2.429504446408996},
    {{6.224, 9.185, 7.944, 10.914, 9.08, 12.353, 7.367, 10.633, 9.144, 13.272, 3.008, 10.965, 5.641},
     {7.616, 9.95, 5.854, 6.721, 8.612, 9.115, 4.775, 7.602, 9.599, 9.638, 8.182, 9.989, 8.591, 13.221},
     0.3820065474194062, 21.695960593376785, 0.7061726244499251,
     0.3867020406618473, 25.0, 0.7022488089337686,
     0.1489438761989566, -0.6071064890378755, 0.9049942414357885},
    {{8.944, 9.731, 8.661, 9.744, 8.53, 8.43, 8.909},
     {10.057, 9.065, 9.69, 9.998, 9.978, 10.538, 10.482, 10.205, 10.562},
     -4.134227406896683, 12.1096935864818, 0.0013592340043223675,
     -4.205307760373812, 14.0, 0.0008814017644177068,
     -2.1192759086550654, -3.380963259851721, -0.8575885574584097},
    {{10.231, 11.492, 10.354, 11.52, 9.609, 11.623},
     {7.78, 10.66, 9.626, 9.119, 10.269, 8.99, 8.644, 10.694},
     2.6436568851468802, 11.836065635643912, 0.021642264834757133,
     2.5663729815810963, 12.0, 0.02471000206513971,
     1.385999819085578, 0.19102952121450767, 2.5809701169566486},
    {{9.055, 10.45, 10.805, 9.278, 11.396, 11.182, 12.055, 10.662},
     {11.053, 12.016, 10.226, 9.443, 8.385},
     0.532558931323966, 6.661388518969065, 0.6116318988562772,
     0.5760028896833198, 11.0, 0.576208173986801,
     0.3283721698015071, -0.7973936933041311, 1.4541380329071454},
    {{12.194, 10.771, 13.131, 9.413, 10.524, 13.486, 7.654, 10.837, 12.554, 8.081},
     {9.409, 8.944, 10.998, 9.84, 9.734, 8.806, 9.101, 10.783, 9.84, 9.661},
     1.6951312922212922, 11.260768152747012, 0.11749307878768074,
     1.6951312922212922, 18.0, 0.10727965852794481,
     0.7580857600387751, -0.15276342472103244, 1.6689349447985826},
    {{10.07, 10.406, 10.817},
     {11.355, 8.65, 8.408, 10.074},
     1.12711020297392, 3.5737082918635217, 0.32963707048596425,
     0.9748961896021299, 5.0, 0.3743858831594713,
     0.7445892639292967, -0.8219089637980809, 2.311087491656674},
    {{9.184, 14.026, 9.039, 11.063, 11.63, 13.276, 14.175, 11.336, 15.052, 9.587, 11.895, 10.76, 12.389},
     {7.506, 7.123, 13.362, 12.788, 11.47, 8.16, 11.551},
     1.3529620160859863, 9.645785880145272, 0.20692634362642762,
     1.4849591222406002, 18.0, 0.1548573161501742,
     0.6961595741544745, -0.2504258515033221, 1.6427449998122712},
    {{8.645, 8.808, 9.515, 8.617, 7.918, 9.824, 9.164, 7.884, 8.258, 9.624, 7.667, 9.667},
     {10.018, 9.882, 10.669},
     -4.245143515002024, 5.897313659515887, 0.005623421090414179,
     -2.9939991984809025, 13.0, 0.010357731548940595,
     -1.9326181723791482, -3.399768199773187, -0.4654681449851097},
};

}  // namespace oracle
