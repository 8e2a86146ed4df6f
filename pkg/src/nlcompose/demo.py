"""The trip-planning demo registry: eight services with mock concretes.

Used by the test suite, the `demo` CLI scaffold, and the README walkthrough.
Capability wording sticks to the synthetic vocabulary in `synth.py` so the
demo matches well out of the box.
"""

from __future__ import annotations

from pathlib import Path

DEMO_MANIFESTS: dict[str, str] = {
    "calendar.svc": """\
service CalendarService
  method checkAvailability
    capability "validates availability on calendar given a time slot"
    capability "checks conflicts on calendar given a range of dates"
    capability "checks calendar availability on a range of dates"
    arg fromDate "check calendar from date (yyyy-mm-dd)" kind DATE
    arg toDate "check calendar to date (yyyy-mm-dd)" kind DATE
    returns availability "whether the calendar is free on the given dates"
""",
    "flights.svc": """\
service FlightReservationService
  method searchFlight
    capability "searches flights to a destination place below a maximum ticket price"
    capability "finds cheap flights between cities"
    arg from "from a specific origin place"
    arg to "to a specific destination place"
    arg price "maximum price per flight ticket"
    arg class "cabin class"
    arg numPass "number of passengers or travelers"
    returns selectedFlights "the flights found by the search"
  method bookFlight
    capability "books a selected flight"
    capability "reserves a chosen flight ticket"
    arg selectedFlights "the flights chosen from a search"
    returns bookedFlight "the booked flight confirmation"
""",
    "hotels.svc": """\
service HotelReservationService
  method searchHotels
    capability "searches hotel rooms below a nightly price"
    capability "finds hotels near downtown in a city"
    arg hotelCity "destination city for the hotel" kind LOCATION
    arg maxNightly "maximum nightly room price"
    returns selectedHotels "the hotels found by the search"
  method bookHotel
    capability "books a selected hotel room"
    arg selectedHotels "the hotels chosen from a search"
    returns bookedHotel "the booked hotel confirmation"
""",
    "weather.svc": """\
service WeatherService
  method getForecast
    capability "gets the weather forecast for a city"
    capability "checks weather conditions and temperature"
    arg weatherCity "city to get the weather forecast for" kind LOCATION
    returns forecast "the weather forecast report"
""",
    "transport.svc": """\
service GroundTransportationService
  method arrangeRide
    capability "arranges ground transportation and taxi rides in a city"
    capability "gets a taxi cab or car ride"
    arg pickupPlace "the pickup place for the ride"
    arg dropoffPlace "the destination place of the ride"
    returns arrangedRide "the arranged ride details"
""",
    "messaging.svc": """\
service MessagingService
  method sendMessage
    capability "sends a text message to a contact"
    capability "notifies a person with a message"
    arg recipient "the person to notify" kind PERSON
    arg messageText "the message text to send"
    returns sentMessage "the sent message receipt"
""",
    "leisure.svc": """\
service LeisureActivitiesService
  method findActivities
    capability "finds fun indoor and outdoor activities and attractions in a city"
    capability "suggests leisure events tours and museums"
    arg activityCity "city to find activities in" kind LOCATION
    returns suggestedActivities "the suggested activities"
""",
    "maps.svc": """\
service MapsService
  method getRoute
    capability "gets the map route and directions between two places"
    capability "shows navigation directions and distance"
    arg routeFrom "the place the route starts from"
    arg routeTo "the place the route goes to"
    returns plannedRoute "the map route with directions"
""",
    "calendar-google.svc": """\
concrete GoogleCalendarService implements CalendarService
  executor mock
""",
    "calendar-yahoo.svc": """\
concrete YahooCalendarService implements CalendarService
  executor mock
  qos checkAvailability BATTERY = HALF_CHARGED
  qos checkAvailability CONNECTIVITY = REQUIRES_WIFI
""",
    "flights-sky.svc": """\
concrete SkyFlightsService implements FlightReservationService
  executor mock
""",
    "hotels-city.svc": """\
concrete CityHotelsService implements HotelReservationService
  executor mock
""",
    "weather-open.svc": """\
concrete OpenWeatherService implements WeatherService
  executor mock
""",
    "transport-metro.svc": """\
concrete MetroRideService implements GroundTransportationService
  executor mock
""",
    "messaging-text.svc": """\
concrete TextingService implements MessagingService
  executor mock
""",
    "leisure-fun.svc": """\
concrete FunFinderService implements LeisureActivitiesService
  executor mock
""",
    "maps-city.svc": """\
concrete CityMapsService implements MapsService
  executor mock
""",
}

# Facts a device would already hold (profile + sensors): the user's home
# airport city, used to resolve searchFlight's origin without asking.
DEMO_CONTEXT_FACTS = {"flight.from": "Pittsburgh"}

DEMO_DEVICE_CONTEXT = {"BATTERY": "FULLY_CHARGED", "CONNECTIVITY": "REQUIRES_WIFI"}


def write_demo_manifests(directory: Path | str) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for filename, text in DEMO_MANIFESTS.items():
        (directory / filename).write_text(text, encoding="utf-8")
    return directory
