// Generated by scripts/gen_tw1_table.py; do not edit by hand.
// Nystrom discretisation: 120 Gauss-Legendre nodes on [0, 24.0].
pub(crate) const TW1_TABLE: &[(f64, f64)] = &[
    (0.005, -4.147876502091),
    (0.010, -3.895432673064),
    (0.015, -3.734873164476),
    (0.020, -3.614057143231),
    (0.025, -3.515853560840),
    (0.030, -3.432376991846),
    (0.035, -3.359310629036),
    (0.040, -3.294021243285),
    (0.045, -3.234778181586),
    (0.050, -3.180379976938),
    (0.055, -3.129956766465),
    (0.060, -3.082857465618),
    (0.065, -3.038581392975),
    (0.070, -2.996734803162),
    (0.075, -2.957002145143),
    (0.080, -2.919126420213),
    (0.085, -2.882895376855),
    (0.090, -2.848131570640),
    (0.095, -2.814685054916),
    (0.100, -2.782427905695),
    (0.105, -2.751250052753),
    (0.110, -2.721056058577),
    (0.115, -2.691762596803),
    (0.120, -2.663296454705),
    (0.125, -2.635592933735),
    (0.130, -2.608594556170),
    (0.135, -2.582250009865),
    (0.140, -2.556513280148),
    (0.145, -2.531342930218),
    (0.150, -2.506701500431),
    (0.155, -2.482555003559),
    (0.160, -2.458872498083),
    (0.165, -2.435625725437),
    (0.170, -2.412788799955),
    (0.175, -2.390337942557),
    (0.180, -2.368251250929),
    (0.185, -2.346508500337),
    (0.190, -2.325090970249),
    (0.195, -2.303981292859),
    (0.200, -2.283163320233),
    (0.205, -2.262622007395),
    (0.210, -2.242343309078),
    (0.215, -2.222314088276),
    (0.220, -2.202522034981),
    (0.225, -2.182955593778),
    (0.230, -2.163603899150),
    (0.235, -2.144456717513),
    (0.240, -2.125504395160),
    (0.245, -2.106737811391),
    (0.250, -2.088148336215),
    (0.255, -2.069727792100),
    (0.260, -2.051468419291),
    (0.265, -2.033362844317),
    (0.270, -2.015404051324),
    (0.275, -1.997585355936),
    (0.280, -1.979900381366),
    (0.285, -1.962343036553),
    (0.290, -1.944907496117),
    (0.295, -1.927588181936),
    (0.300, -1.910379746199),
    (0.305, -1.893277055785),
    (0.310, -1.876275177837),
    (0.315, -1.859369366421),
    (0.320, -1.842555050172),
    (0.325, -1.825827820826),
    (0.330, -1.809183422566),
    (0.335, -1.792617742109),
    (0.340, -1.776126799457),
    (0.345, -1.759706739268),
    (0.350, -1.743353822784),
    (0.355, -1.727064420271),
    (0.360, -1.710835003922),
    (0.365, -1.694662141193),
    (0.370, -1.678542488528),
    (0.375, -1.662472785442),
    (0.380, -1.646449848929),
    (0.385, -1.630470568182),
    (0.390, -1.614531899571),
    (0.395, -1.598630861889),
    (0.400, -1.582764531821),
    (0.405, -1.566930039625),
    (0.410, -1.551124565008),
    (0.415, -1.535345333176),
    (0.420, -1.519589611048),
    (0.425, -1.503854703611),
    (0.430, -1.488137950413),
    (0.435, -1.472436722170),
    (0.440, -1.456748417487),
    (0.445, -1.441070459670),
    (0.450, -1.425400293625),
    (0.455, -1.409735382836),
    (0.460, -1.394073206404),
    (0.465, -1.378411256146),
    (0.470, -1.362747033739),
    (0.475, -1.347078047906),
    (0.480, -1.331401811632),
    (0.485, -1.315715839399),
    (0.490, -1.300017644440),
    (0.495, -1.284304735997),
    (0.500, -1.268574616581),
    (0.505, -1.252824779216),
    (0.510, -1.237052704674),
    (0.515, -1.221255858679),
    (0.520, -1.205431689083),
    (0.525, -1.189577622998),
    (0.530, -1.173691063875),
    (0.535, -1.157769388536),
    (0.540, -1.141809944129),
    (0.545, -1.125810045006),
    (0.550, -1.109766969528),
    (0.555, -1.093677956757),
    (0.560, -1.077540203056),
    (0.565, -1.061350858561),
    (0.570, -1.045107023534),
    (0.575, -1.028805744560),
    (0.580, -1.012444010606),
    (0.585, -0.996018748895),
    (0.590, -0.979526820604),
    (0.595, -0.962965016361),
    (0.600, -0.946330051517),
    (0.605, -0.929618561189),
    (0.610, -0.912827095039),
    (0.615, -0.895952111774),
    (0.620, -0.878989973344),
    (0.625, -0.861936938809),
    (0.630, -0.844789157847),
    (0.635, -0.827542663873),
    (0.640, -0.810193366737),
    (0.645, -0.792737044958),
    (0.650, -0.775169337465),
    (0.655, -0.757485734787),
    (0.660, -0.739681569652),
    (0.665, -0.721752006945),
    (0.670, -0.703692032956),
    (0.675, -0.685496443853),
    (0.680, -0.667159833330),
    (0.685, -0.648676579311),
    (0.690, -0.630040829663),
    (0.695, -0.611246486791),
    (0.700, -0.592287191016),
    (0.705, -0.573156302617),
    (0.710, -0.553846882394),
    (0.715, -0.534351670605),
    (0.720, -0.514663064100),
    (0.725, -0.494773091465),
    (0.730, -0.474673385960),
    (0.735, -0.454355155994),
    (0.740, -0.433809152882),
    (0.745, -0.413025635545),
    (0.750, -0.391994331818),
    (0.755, -0.370704395946),
    (0.760, -0.349144361808),
    (0.765, -0.327302091335),
    (0.770, -0.305164717522),
    (0.775, -0.282718581305),
    (0.780, -0.259949161524),
    (0.785, -0.236840997004),
    (0.790, -0.213377599669),
    (0.795, -0.189541357414),
    (0.800, -0.165313425235),
    (0.805, -0.140673602872),
    (0.810, -0.115600196875),
    (0.815, -0.090069864660),
    (0.820, -0.064057437628),
    (0.825, -0.037535719862),
    (0.830, -0.010475258227),
    (0.835, 0.017155921182),
    (0.840, 0.045392616354),
    (0.845, 0.074272799895),
    (0.850, 0.103838025947),
    (0.855, 0.134133904769),
    (0.860, 0.165210659019),
    (0.865, 0.197123779307),
    (0.870, 0.229934801157),
    (0.875, 0.263712231520),
    (0.880, 0.298532660944),
    (0.885, 0.334482108101),
    (0.890, 0.371657657760),
    (0.895, 0.410169472918),
    (0.900, 0.450143289058),
    (0.905, 0.491723536811),
    (0.910, 0.535077294012),
    (0.915, 0.580399347634),
    (0.920, 0.627918763777),
    (0.925, 0.677907541740),
    (0.930, 0.730692203422),
    (0.935, 0.786669606114),
    (0.940, 0.846328981047),
    (0.945, 0.910283407499),
    (0.950, 0.979316053470),
    (0.955, 1.054450410832),
    (0.960, 1.137061299725),
    (0.965, 1.229058987281),
    (0.970, 1.333213478349),
    (0.975, 1.453771351949),
    (0.980, 1.597755674125),
    (0.985, 1.778131691016),
    (0.990, 2.023449281380),
    (0.995, 2.422326585896),
];
