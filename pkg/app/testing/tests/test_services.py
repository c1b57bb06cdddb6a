import inject

from app.config import settings
from app.constants import G
from app.services import cache
from app.services.approx import ApproximationService
from app.services.mueller import MuellerService
from app.testing.base import QUICK_RESOLUTION, TestCaseBase


class ServicesTestCase(TestCaseBase):
    muellerService = inject.attr(MuellerService)
    approxService = inject.attr(ApproximationService)

    def test_inject(self):
        self.should("share one service instance between consumers")
        self.assertIs(self.approxService.muellerService, self.muellerService)
        self.assertIs(inject.instance(MuellerService), self.muellerService)

    def test_report_cache(self):
        self.should("reuse certificate reports only when caching is on")
        first = self.muellerService.is_mueller(G, QUICK_RESOLUTION)
        self.assertIsNot(self.muellerService.is_mueller(G, QUICK_RESOLUTION), first)

        settings.use_cache = True
        try:
            cached = self.muellerService.is_mueller(G, QUICK_RESOLUTION)
            self.assertIs(self.muellerService.is_mueller(G, QUICK_RESOLUTION), cached)
            self.assertIsNot(self.muellerService.is_mueller(G, QUICK_RESOLUTION + 2), cached)
        finally:
            settings.use_cache = False
            cache.clear()
