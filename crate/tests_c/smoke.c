#include <stdio.h>
#include <assert.h>
#include "apcw.h"

int main(void) {
    ApcwBeam *beam = apcw_beam_reference_device();
    ApcwModeTable *table = NULL;
    ApcwStatus st = apcw_analytic_modes(beam, 3, &table);
    assert(st == APCW_STATUS_OK);
    assert(apcw_mode_table_len(table) == 3);
    ApcwMode mode;
    assert(apcw_mode_table_get(table, 0, &mode) == APCW_STATUS_OK);
    printf("f1 = %.6e Hz\n", mode.frequency);
    assert(mode.frequency > 2.3e6 && mode.frequency < 2.4e6);

    double azp = 0.0;
    assert(apcw_zero_point_amplitude(16.3e-15, 2.3844e6, &azp) == APCW_STATUS_OK);
    printf("alpha_zp = %.4e m\n", azp);
    assert(azp > 14.5e-15 && azp < 14.9e-15);

    ApcwDispersion *disp = apcw_dispersion_reference_device();
    double rungs[4];
    assert(apcw_resonance_ladder(disp, 4, rungs) == APCW_STATUS_OK);
    printf("nu_1 = %.6e Hz\n", rungs[0]);

    double k = 0.0;
    st = apcw_delta_kx(disp, 348e12, &k);
    assert(st == APCW_STATUS_BAND_GAP);
    printf("gap error: %s\n", apcw_last_error_message());

    apcw_dispersion_free(disp);
    apcw_mode_table_free(table);
    apcw_beam_free(beam);
    printf("C ABI smoke test passed\n");
    return 0;
}
