import { ApiClient } from "./api.js";
import { ChatWidget } from "./chat.js";
import { RoomsSearch } from "./rooms.js";

const api = new ApiClient(window.HOTELQA_API_BASE ?? "");

const chatMount = document.getElementById("emma-chat");
if (chatMount) {
  new ChatWidget(chatMount, api);
}

const roomsMount = document.getElementById("rooms-search");
if (roomsMount) {
  new RoomsSearch(roomsMount, api);
}
